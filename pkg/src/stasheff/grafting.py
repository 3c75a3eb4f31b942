"""Grafting maps for metric trees, their compatibility relations, and the
level-tree decision procedure.

Three grafting variants are provided:

* ``graft_k``  -- unpainted onto unpainted (partial composition),
* ``graft_jk`` -- unpainted onto painted (grafted edges stay unpainted),
* ``graft_kj`` -- painted trees onto an unpainted base (base becomes painted).

Every graft identifies the root edge of the grafted tree with a leaf edge of
the host; the new internal edge always gets length 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .trees import (
    LEAF_TREE, TYPE_I, TYPE_II, TYPE_III, UNPAINTED, DomainError, Tree,
    encode, enumerate_binary_painted, enumerate_binary_unpainted, equal_as_points,
    internal_edge_count, is_metric, is_painted, leaf_count, max_internal_length,
    repaint, require_valid, scale_lengths, with_lengths,
)

_ONE = Fraction(1)
_TO_TYPE_I = {UNPAINTED: TYPE_I}
_TO_TYPE_II = {UNPAINTED: TYPE_II}


def _replace_leaf(host: Tree, k: int, repl: Tree) -> Tree:
    """Replace the k-th leaf (1-based, left to right) of ``host`` by ``repl``."""
    seen = 0

    def go(nd):
        nonlocal seen
        if nd.is_leaf:
            seen += 1
            return repl if seen == k else nd
        if seen >= k:
            return nd
        return Tree(nd.kind, tuple(go(c) for c in nd.children), nd.length)

    out = go(host)
    if seen < k:
        raise DomainError(f"leaf index {k} out of range (tree has {seen} leaves)")
    return out


def graft_k(k: int, rho: Tree, tau: Tree) -> Tree:
    """Graft the unpainted tree tau onto the k-th leaf of the unpainted rho."""
    if is_painted(rho) or is_painted(tau):
        raise DomainError("graft_k expects unpainted operands")
    if k < 1:
        raise DomainError(f"leaf index {k} out of range")
    return _replace_leaf(rho, k, tau.with_length(_ONE))


def graft_jk(k: int, rho: Tree, tau: Tree) -> Tree:
    """Graft the unpainted tree tau onto the k-th leaf of the painted rho.

    Edges coming from tau stay unpainted (tau's vertices become Type I).
    """
    if not is_painted(rho):
        raise DomainError("graft_jk expects a painted host")
    if is_painted(tau):
        raise DomainError("graft_jk expects an unpainted graft")
    if k < 1:
        raise DomainError(f"leaf index {k} out of range")
    return _replace_leaf(rho, k, repaint(tau, _TO_TYPE_I).with_length(_ONE))


def graft_kj(tau: Tree, rhos) -> Tree:
    """Graft painted trees onto all leaves of the unpainted base tau.

    Edges coming from tau become painted (tau's vertices become Type II).
    """
    if is_painted(tau):
        raise DomainError("graft_kj expects an unpainted base")
    rhos = tuple(rhos)
    t = leaf_count(tau)
    if len(rhos) != t:
        raise DomainError(f"need {t} painted trees, got {len(rhos)}")
    for r in rhos:
        if not is_painted(r):
            raise DomainError("graft_kj expects painted grafts")
    it = iter(rhos)
    base = repaint(tau, _TO_TYPE_II)

    def go(nd):
        if nd.is_leaf:
            return next(it).with_length(_ONE)
        return Tree(nd.kind, tuple(go(c) for c in nd.children), nd.length)

    return go(base)


# ---------------------------------------------------------------------------
# level-trees

_level_cache: dict = {}


def _unpainted_cut_candidates(t: Tree):
    """Yield (k, host, piece) for every unpainted internal edge of length 1.

    Cutting such an edge exhibits the tree as graft_jk(k, host, piece).
    """
    def go(nd, offset, rebuild):
        # offset: number of leaves strictly left of nd's subtree
        pos = offset
        for i, c in enumerate(nd.children):
            if not c.is_leaf:
                if c.kind == TYPE_I and c.length == 1:
                    host = rebuild(Tree(nd.kind,
                                        nd.children[:i] + (LEAF_TREE,) + nd.children[i + 1:],
                                        nd.length))
                    yield pos + 1, host, c.with_length(None)
                sub_rebuild = (lambda i=i, nd=nd, rebuild=rebuild: lambda new:
                               rebuild(Tree(nd.kind,
                                            nd.children[:i] + (new,) + nd.children[i + 1:],
                                            nd.length)))()
                yield from go(c, pos, sub_rebuild)
            pos += leaf_count(c)

    yield from go(t, 0, lambda x: x)


def _crust_cut_candidates(t: Tree):
    """Yield (crust, pieces) decompositions t = graft_kj(crust, pieces).

    The crust is the root-side fully painted part (returned as an unpainted
    metric tree); each cut edge must be a painted internal edge of length 1.
    """
    if t.kind != TYPE_II:
        return

    def options(nd):
        # nd is a Type II vertex included in the crust.  Yields
        # (crust_subtree, pieces) with the crust vertex repainted to "n".
        per_child = []
        for c in nd.children:
            opts = []
            if c.length == 1:
                opts.append((LEAF_TREE, (c.with_length(None),)))
            if c.kind == TYPE_II:
                opts.extend(options(c))
            if not opts:
                return
            per_child.append(opts)
        for combo in product(*per_child):
            kids = tuple(ch for ch, _ in combo)
            pieces = tuple(p for _, ps in combo for p in ps)
            yield Tree(UNPAINTED, kids, nd.length), pieces

    yield from options(t)


def level_witness(t: Tree):
    """Decide the level-tree property and return (is_level, witness).

    The witness describes the first decomposition of the rescaled tree found
    (cuts of unpainted length-1 edges are tried before painted crust cuts,
    lexicographically within each); it is ``None`` when the maximal internal
    edge length is 0, where the definition holds with no decomposition.
    """
    if not is_painted(t):
        raise DomainError("level-trees are painted metric trees")
    require_valid(t, "painted metric tree")
    if not is_metric(t):
        raise DomainError("level-trees are painted metric trees")
    return _level_witness(t)


def _level_witness(t: Tree):
    key = encode(t)
    hit = _level_cache.get(key)
    if hit is not None:
        return hit
    m = max_internal_length(t)
    if m == 0:
        result = (True, None)
    else:
        tt = t if m == 1 else scale_lengths(t, 1 / m)
        result = (False, None)
        for k, host, piece in sorted(_unpainted_cut_candidates(tt),
                                     key=lambda c: (c[0], encode(c[2]))):
            if _level_witness(host)[0]:
                result = (True, {
                    "max_length": str(m),
                    "variant": "unpainted-graft",
                    "k": k,
                    "host": encode(host),
                    "piece": encode(piece),
                })
                break
        if not result[0]:
            for crust, pieces in sorted(_crust_cut_candidates(tt),
                                        key=lambda c: encode(c[0])):
                if all(_level_witness(p)[0] for p in pieces):
                    result = (True, {
                        "max_length": str(m),
                        "variant": "painted-graft",
                        "base": encode(crust),
                        "pieces": [encode(p) for p in pieces],
                    })
                    break
    _level_cache[key] = result
    return result


def is_level_tree(t: Tree) -> bool:
    """True iff the painted metric tree satisfies the inductive level condition."""
    return level_witness(t)[0]


# ---------------------------------------------------------------------------
# relation verification

@dataclass
class RelationReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _metric_pool(shapes, samples):
    out = []
    for shape in shapes:
        slots = internal_edge_count(shape)
        for lengths in product(samples, repeat=slots):
            out.append(with_lengths(shape, lengths))
    return out


def verify_graft_relations(max_leaves: int, samples) -> RelationReport:
    """Exhaustively check the six grafting compatibility relations.

    Every admissible index combination whose output has at most ``max_leaves``
    leaves is checked on all binary metric factors with edge lengths drawn
    from ``samples``.  Returns a report listing any failures (expected: none).
    """
    if max_leaves < 4:
        raise DomainError("max_leaves must be at least 4")
    samples = tuple(sorted({Fraction(s) for s in samples}))
    for s in samples:
        if not (0 <= s <= 1):
            raise DomainError("length samples must lie in [0, 1]")

    class _LazyPools(dict):
        def __init__(self, shapes_of):
            super().__init__()
            self._shapes_of = shapes_of

        def __missing__(self, n):
            pool = _metric_pool(self._shapes_of(n), samples)
            self[n] = pool
            return pool

    unp = _LazyPools(enumerate_binary_unpainted)
    pai = _LazyPools(enumerate_binary_painted)

    report = RelationReport()

    def check(name, lhs, rhs, detail):
        report.checked += 1
        if lhs != rhs and not equal_as_points(lhs, rhs):
            report.failures.append(f"{name} {detail}: {encode(lhs)} != {encode(rhs)}")

    # Relation 1: associativity of partial grafting (unpainted).
    # Relation 2: grafts at distinct leaves commute (unpainted).
    for p in range(2, max_leaves - 1):
        for r in range(2, max_leaves - p + 2):
            for t in range(2, max_leaves - p - r + 3):
                for a, b, c in product(unp[p], unp[r], unp[t]):
                    for j in range(1, p + 1):
                        for k in range(1, r + 1):
                            check("partial-assoc",
                                  graft_k(j, a, graft_k(k, b, c)),
                                  graft_k(j + k - 1, graft_k(j, a, b), c),
                                  f"p={p} r={r} t={t} j={j} k={k}")
                    for k in range(1, p + 1):
                        for j in range(k + 1, p + 1):
                            check("partial-commute",
                                  graft_k(j + r - 1, graft_k(k, a, b), c),
                                  graft_k(k, graft_k(j, a, c), b),
                                  f"p={p} r={r} t={t} j={j} k={k}")

    # Relations 3 and 4: the same two shapes for unpainted-onto-painted grafts.
    for p in range(1, max_leaves - 1):
        for r in range(2, max_leaves - p + 2):
            for t in range(2, max_leaves - p - r + 3):
                for rho, b, c in product(pai[p], unp[r], unp[t]):
                    for j in range(1, p + 1):
                        for k in range(1, r + 1):
                            check("mixed-assoc",
                                  graft_jk(j, rho, graft_k(k, b, c)),
                                  graft_jk(j + k - 1, graft_jk(j, rho, b), c),
                                  f"p={p} r={r} t={t} j={j} k={k}")
                    for k in range(1, p + 1):
                        for j in range(k + 1, p + 1):
                            check("mixed-commute",
                                  graft_jk(j + r - 1, graft_jk(k, rho, b), c),
                                  graft_jk(k, graft_jk(j, rho, c), b),
                                  f"p={p} r={r} t={t} j={j} k={k}")

    # Relation 5: grafting unpainted into one factor of a painted-onto-base graft.
    for t in range(2, max_leaves):
        for r in range(2, max_leaves + 1):
            for ps in _leaf_splits(t, max_leaves - r + 1):
                pools = [pai[q] for q in ps]
                for tau in unp[t]:
                    for pis in product(*pools):
                        base = graft_kj(tau, pis)
                        for j in range(1, t + 1):
                            off = sum(ps[:j - 1])
                            for k in range(1, ps[j - 1] + 1):
                                for rho in unp[r]:
                                    lhs = graft_jk(off + k, base, rho)
                                    inner = graft_jk(k, pis[j - 1], rho)
                                    rhs = graft_kj(tau, pis[:j - 1] + (inner,) + pis[j:])
                                    check("base-factor",
                                          lhs, rhs,
                                          f"t={t} ps={ps} r={r} j={j} k={k}")

    # Relation 6: composing the base before grafting painted factors.
    for r in range(2, max_leaves):
        for t in range(2, max_leaves):
            m = r + t - 1
            if m > max_leaves:
                continue
            for ps in _leaf_splits(m, max_leaves):
                pools = [pai[q] for q in ps]
                for rho, tau in product(unp[r], unp[t]):
                    for k in range(1, r + 1):
                        base = graft_k(k, rho, tau)
                        for pis in product(*pools):
                            lhs = graft_kj(base, pis)
                            inner = graft_kj(tau, pis[k - 1:k + t - 1])
                            rhs = graft_kj(rho, pis[:k - 1] + (inner,) + pis[k + t - 1:])
                            check("base-compose",
                                  lhs, rhs,
                                  f"r={r} t={t} ps={ps} k={k}")

    return report


def _leaf_splits(parts: int, total_max: int):
    """Compositions of at most ``total_max`` leaves into ``parts`` positive parts."""
    if parts > total_max:
        return
    def go(parts, budget):
        if parts == 1:
            for v in range(1, budget + 1):
                yield (v,)
            return
        for first in range(1, budget - parts + 2):
            for rest in go(parts - 1, budget - first):
                yield (first,) + rest
    yield from go(parts, total_max)
