"""Finite CW-style models of the associahedra K_n, multiplihedra J_n and
their boundary spheres L_n, H_n.

Cells carry canonical labels: the face of K_n reached by a composite of
grafting maps is the plane tree recording where the grafts occurred, so
K-cells are labeled by unpainted trees with n leaves (the top cell is the
corolla).  J-cells are likewise labeled by painted trees with n leaves (top
cell: the painted corolla); the four grafting relations identify exactly the
composites that assemble the same painted tree.

The codimension-1 incidences are the single-edge expansions of a label tree
(splitting an internal vertex, or splitting a Type III vertex into a Type II
vertex over Type III vertices).  Incidence signs are chosen per cell by
propagating the diamond condition (every codimension-2 face of a cell lies in
exactly two of its facets) from the lexicographically least facet, which is
oriented +1; this makes the boundary operator square to zero over the
integers and is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .trees import (
    LEAF_TREE, TYPE_I, TYPE_II, TYPE_III, UNPAINTED, DomainError, Tree,
    corolla, encode, enumerate_painted_shapes, enumerate_planar_trees,
    painted_corolla, parse,
)

FAMILY_BOUNDS = {"K": (2, 8), "L": (3, 8), "J": (1, 6), "H": (2, 6)}


@dataclass
class CellComplex:
    family: str
    n: int
    labels: list          # cell id -> canonical label (grammar string)
    dims: list            # cell id -> dimension
    boundary: list        # cell id -> {facet id: incidence coefficient}

    def __eq__(self, other):
        return (isinstance(other, CellComplex)
                and (self.family, self.n, self.labels, self.dims, self.boundary)
                == (other.family, other.n, other.labels, other.dims, other.boundary))

    @property
    def dimension(self) -> int:
        return max(self.dims) if self.dims else -1


# ---------------------------------------------------------------------------
# face enumeration on label trees

def cell_dimension(shape: Tree) -> int:
    """Dimension of the cell labeled by a tree: sum of vertex excesses."""
    if shape.is_leaf:
        return 0
    own = len(shape.children) - (1 if shape.kind == TYPE_III else 2)
    return own + sum(cell_dimension(c) for c in shape.children)


def _vertex_expansions(nd: Tree):
    """Codim-1 expansions at the root vertex of ``nd``."""
    m = len(nd.children)
    out = []
    if nd.kind in (UNPAINTED, TYPE_I, TYPE_II) and m >= 3:
        for size in range(2, m):
            for i in range(m - size + 1):
                grouped = Tree(nd.kind, nd.children[i:i + size])
                out.append(Tree(nd.kind,
                                nd.children[:i] + (grouped,) + nd.children[i + size:]))
    if nd.kind == TYPE_III and m >= 2:
        # graft of an unpainted tree: a contiguous run moves under a Type I vertex
        for size in range(2, m + 1):
            for i in range(m - size + 1):
                grouped = Tree(TYPE_I, nd.children[i:i + size])
                out.append(Tree(TYPE_III,
                                nd.children[:i] + (grouped,) + nd.children[i + size:]))
        # graft of painted trees onto a base: split into Type II over Type III
        for parts in range(2, m + 1):
            for cuts in _contiguous_groupings(m, parts):
                kids = tuple(Tree(TYPE_III, nd.children[a:b]) for a, b in cuts)
                out.append(Tree(TYPE_II, kids))
    return out


def _contiguous_groupings(m: int, parts: int):
    """Split positions 0..m-1 into ``parts`` contiguous nonempty intervals."""
    def go(start, parts):
        if parts == 1:
            yield ((start, m),)
            return
        for end in range(start + 1, m - parts + 2):
            for rest in go(end, parts - 1):
                yield ((start, end),) + rest
    yield from go(0, parts)


@lru_cache(maxsize=None)
def facet_shapes(shape: Tree) -> tuple:
    """All codimension-1 faces of the cell labeled ``shape``, as label trees."""
    out = list(_vertex_expansions(shape))
    for i, c in enumerate(shape.children):
        if not c.is_leaf:
            for e in facet_shapes(c):
                out.append(Tree(shape.kind,
                                shape.children[:i] + (e,) + shape.children[i + 1:]))
    uniq = {encode(t): t for t in out}
    return tuple(uniq[k] for k in sorted(uniq))


# ---------------------------------------------------------------------------
# complex assembly

def build_complex(family: str, n: int, _reverse: bool = False) -> CellComplex:
    """Build K_n, L_n, J_n or H_n as a finite complex with signed incidences.

    ``_reverse`` flips the internal processing order; it exists to let tests
    certify that cell identification and sign assignment are order-independent.
    """
    if family not in FAMILY_BOUNDS:
        raise DomainError(f"unknown family {family!r} (expected K, L, J or H)")
    lo, hi = FAMILY_BOUNDS[family]
    if not lo <= n <= hi:
        raise DomainError(
            f"{family}_{n} is outside the supported desk-scale range {lo} <= n <= {hi}")

    if family in ("K", "L"):
        shapes = list(enumerate_planar_trees(n))
        top = corolla(n)
    else:
        shapes = list(enumerate_painted_shapes(n))
        top = painted_corolla(n)
    if family in ("L", "H"):
        shapes = [s for s in shapes if s != top]

    cells = sorted(shapes, key=lambda s: (cell_dimension(s), encode(s)))
    if _reverse:
        work_order = list(reversed(range(len(cells))))
    else:
        work_order = list(range(len(cells)))

    labels = [encode(s) for s in cells]
    dims = [cell_dimension(s) for s in cells]
    index = {lab: i for i, lab in enumerate(labels)}
    facet_ids = []
    for s in cells:
        ids = []
        for f in facet_shapes(s):
            j = index.get(encode(f))
            if j is None:
                raise AssertionError(f"facet {encode(f)} missing from complex")
            ids.append(j)
        facet_ids.append(sorted(ids))

    boundary = [dict() for _ in cells]
    by_dim: dict = {}
    for i in range(len(cells)):
        by_dim.setdefault(dims[i], []).append(i)
    for d in sorted(by_dim):
        if d == 0:
            continue
        order = by_dim[d] if not _reverse else list(reversed(by_dim[d]))
        for i in order:
            boundary[i] = _assign_signs(i, facet_ids, boundary, labels, dims)

    return CellComplex(family, n, labels, dims, boundary)


def _assign_signs(cell, facet_ids, boundary, labels, dims):
    """Choose incidence coefficients for one cell's facets.

    The diamond condition ties the parities of the two facets over each
    codim-2 face; signs are propagated from the lexicographically least facet
    (oriented +1).  The result is the unique consistent assignment with that
    anchor, so it does not depend on processing order.
    """
    facets = facet_ids[cell]
    if dims[cell] == 1:
        if len(facets) != 2:
            raise AssertionError(f"1-cell {labels[cell]} has {len(facets)} endpoints")
        a, b = sorted(facets, key=lambda i: labels[i])
        return {a: 1, b: -1}

    ridge_owners: dict = {}
    for f in facets:
        for r in facet_ids[f]:
            ridge_owners.setdefault(r, []).append(f)
    adj: dict = {f: [] for f in facets}
    for r, owners in ridge_owners.items():
        if len(owners) != 2:
            raise AssertionError(
                f"codim-2 face {labels[r]} of {labels[cell]} lies in "
                f"{len(owners)} facets (expected 2)")
        f1, f2 = owners
        # sign(f1)*coeff(r,f1) + sign(f2)*coeff(r,f2) = 0
        parity = 1 ^ (boundary[f1][r] < 0) ^ (boundary[f2][r] < 0)
        adj[f1].append((f2, parity))
        adj[f2].append((f1, parity))

    sign_bit: dict = {}
    pending = sorted(facets, key=lambda i: labels[i])
    for seed in pending:
        if seed in sign_bit:
            continue
        sign_bit[seed] = 0
        stack = [seed]
        while stack:
            f = stack.pop()
            for g, parity in adj[f]:
                want = sign_bit[f] ^ parity
                if g in sign_bit:
                    if sign_bit[g] != want:
                        raise AssertionError(
                            f"inconsistent incidence signs on {labels[cell]}")
                else:
                    sign_bit[g] = want
                    stack.append(g)
    return {f: (1 if sign_bit[f] == 0 else -1) for f in facets}


# ---------------------------------------------------------------------------
# invariants of a built complex

def f_vector(cx: CellComplex) -> tuple:
    """Cell counts by dimension, lowest first."""
    counts = [0] * (cx.dimension + 1)
    for d in cx.dims:
        counts[d] += 1
    return tuple(counts)


def euler_characteristic(cx: CellComplex) -> int:
    return sum((-1) ** d * c for d, c in enumerate(f_vector(cx)))


def boundary_squares_to_zero(cx: CellComplex) -> bool:
    """Check d(d(cell)) = 0 over the integers for every cell."""
    for i in range(len(cx.labels)):
        acc: dict = {}
        for f, cf in cx.boundary[i].items():
            for r, cr in cx.boundary[f].items():
                acc[r] = acc.get(r, 0) + cf * cr
        if any(v != 0 for v in acc.values()):
            return False
    return True


def boundary_matrix(cx: CellComplex, d: int):
    """Integer matrix of the boundary map from d-cells to (d-1)-cells.

    Rows are indexed by (d-1)-cells, columns by d-cells, both in cell order.
    """
    rows_idx = [i for i in range(len(cx.dims)) if cx.dims[i] == d - 1]
    cols_idx = [i for i in range(len(cx.dims)) if cx.dims[i] == d]
    rpos = {c: k for k, c in enumerate(rows_idx)}
    mat = [[0] * len(cols_idx) for _ in rows_idx]
    for j, cell in enumerate(cols_idx):
        for f, coeff in cx.boundary[cell].items():
            mat[rpos[f]][j] = coeff
    return mat


def matrix_rank_exact(mat) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Rows are scaled by integers and reduced with exact integer arithmetic
    (unit pivots preferred; otherwise cross-multiplication followed by a gcd
    division), so the rank over the rationals is computed exactly.
    """
    from math import gcd

    rows = []
    for row in mat:
        r = {j: v for j, v in enumerate(row) if v}
        if r:
            rows.append(r)
    rank = 0
    while rows:
        pivot_i = min(range(len(rows)),
                      key=lambda i: (min(abs(v) for v in rows[i].values()) > 1,
                                     len(rows[i])))
        prow = rows.pop(pivot_i)
        pcol = min((j for j, v in prow.items() if abs(v) == 1), default=None)
        if pcol is None:
            pcol = min(prow, key=lambda j: (abs(prow[j]), j))
        pval = prow[pcol]
        rank += 1
        nxt = []
        for r in rows:
            v = r.get(pcol)
            if v:
                new = {}
                for j in r.keys() | prow.keys():
                    y = r.get(j, 0) * pval - prow.get(j, 0) * v
                    if y:
                        new[j] = y
                if new:
                    g = 0
                    for y in new.values():
                        g = gcd(g, y)
                    if g > 1:
                        new = {j: y // g for j, y in new.items()}
                    nxt.append(new)
            else:
                nxt.append(r)
        rows = nxt
    return rank


def homology_ranks(cx: CellComplex) -> tuple:
    """Rational Betti numbers, computed from exact boundary-matrix ranks."""
    top = cx.dimension
    counts = f_vector(cx)
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        ranks[d] = matrix_rank_exact(boundary_matrix(cx, d))
    return tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))


# ---------------------------------------------------------------------------
# serialization

def export_complex(cx: CellComplex) -> dict:
    """Lossless JSON document for a complex, with deterministic ordering."""
    return {
        "family": cx.family,
        "n": cx.n,
        "cells": [{"id": i, "dim": cx.dims[i], "label": cx.labels[i]}
                  for i in range(len(cx.labels))],
        "boundary": [{"of": i, "cell": f, "coeff": c}
                     for i in range(len(cx.labels))
                     for f, c in sorted(cx.boundary[i].items())],
    }


def export_complex_json(cx: CellComplex) -> str:
    return json.dumps(export_complex(cx), separators=(",", ":"), sort_keys=True)


def import_complex(doc) -> CellComplex:
    """Rebuild a complex from its JSON document."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    cells = sorted(doc["cells"], key=lambda c: c["id"])
    labels = [c["label"] for c in cells]
    dims = [c["dim"] for c in cells]
    for lab in labels:
        parse(lab)  # labels must be valid grammar strings
    boundary = [dict() for _ in cells]
    for ent in doc["boundary"]:
        boundary[ent["of"]][ent["cell"]] = ent["coeff"]
    return CellComplex(doc["family"], doc["n"], labels, dims, boundary)


def build_k(n: int) -> CellComplex:
    return build_complex("K", n)


def build_l(n: int) -> CellComplex:
    return build_complex("L", n)


def build_j(n: int) -> CellComplex:
    return build_complex("J", n)


def build_h(n: int) -> CellComplex:
    return build_complex("H", n)
