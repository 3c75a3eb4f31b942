"""Planted plane trees, painted trees, and their exact metric structure.

A tree is an immutable recursive value.  Internal vertices carry a kind:

* ``"n"`` -- internal vertex of an unpainted tree,
* ``"u"`` -- Type I vertex of a painted tree (all incident edges unpainted),
* ``"p"`` -- Type II vertex (all incident edges painted),
* ``"b"`` -- Type III vertex (incoming unpainted, outgoing painted),

and leaves have kind ``"leaf"``.  The paint of an edge is determined by the
vertex on its leaf side: edges out of ``p``/``b`` vertices are painted, all
others are unpainted.  A metric tree additionally stores, on every non-root
internal vertex, the exact rational length of its outgoing edge.

The canonical text grammar (``encode``/``parse``) is::

    leaf                 "*"
    unpainted internal   "(" child+ ")"
    Type I / II / III    "u(" child+ ")" / "p(" child+ ")" / "b(" child+ ")"
    metric annotation    subtree suffix "@p/q"  (lowest terms, 0 <= p/q <= 1)

Example: the binary 3-leaf left comb with edge length 1/2 is ``((* *)@1/2 *)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

LEAF = "leaf"
UNPAINTED = "n"
TYPE_I = "u"
TYPE_II = "p"
TYPE_III = "b"

_INTERNAL_KINDS = (UNPAINTED, TYPE_I, TYPE_II, TYPE_III)
_PAINTED_OUT = (TYPE_II, TYPE_III)


class DomainError(ValueError):
    """Input lies outside an operation's stated domain."""


class GrammarError(DomainError):
    """Malformed canonical tree encoding."""


class PaintedMergeError(DomainError):
    """Reduction would unite vertices into an illegal painted vertex type."""


class DomainMismatchError(DomainError):
    """Operands have different leaf counts or paint flags."""


class Tree(NamedTuple):
    """A planted plane (metric) tree or subtree.

    ``length`` is the length of the outgoing edge when that edge is internal;
    it is ``None`` on leaves, on the root vertex, and everywhere in a pure
    shape (non-metric) tree.  Trees are immutable values; equality and
    hashing are structural.
    """

    kind: str
    children: tuple = ()
    length: Fraction | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def with_length(self, length) -> "Tree":
        return Tree(self.kind, self.children, length)


LEAF_TREE = Tree(LEAF)


def node(kind: str, children, length=None) -> Tree:
    if length is not None and not isinstance(length, Fraction):
        length = Fraction(length)
    return Tree(kind, tuple(children), length)


# ---------------------------------------------------------------------------
# basic measurements

def leaf_count(t: Tree) -> int:
    if t.is_leaf:
        return 1
    return sum(leaf_count(c) for c in t.children)


def internal_edge_count(t: Tree) -> int:
    """Number of internal edges (outgoing edges of non-root internal vertices)."""
    def go(nd, at_root):
        n = 0 if (at_root or nd.is_leaf) else 1
        return n + sum(go(c, False) for c in nd.children)
    return go(t, True)


def is_painted(t: Tree) -> bool:
    """True if the root edge is painted, i.e. the tree is a painted tree."""
    return t.kind in _PAINTED_OUT


def is_metric(t: Tree) -> bool:
    """True if every internal edge carries a length."""
    def go(nd, at_root):
        if nd.is_leaf:
            return True
        if not at_root and nd.length is None:
            return False
        return all(go(c, False) for c in nd.children)
    return go(t, True)


def max_internal_length(t: Tree) -> Fraction:
    """Longest internal edge length; 0 when there are no internal edges."""
    best = Fraction(0)
    def go(nd, at_root):
        nonlocal best
        if nd.is_leaf:
            return
        if not at_root and nd.length is not None and nd.length > best:
            best = nd.length
        for c in nd.children:
            go(c, False)
    go(t, True)
    return best


def scale_lengths(t: Tree, factor: Fraction) -> Tree:
    """Multiply every internal edge length by ``factor``."""
    def go(nd):
        if nd.is_leaf:
            return nd
        kids = tuple(go(c) for c in nd.children)
        ln = None if nd.length is None else nd.length * factor
        return Tree(nd.kind, kids, ln)
    return go(t)


def as_shape(t: Tree) -> Tree:
    """Forget all edge lengths."""
    if t.is_leaf:
        return t
    return Tree(t.kind, tuple(as_shape(c) for c in t.children), None)


def with_lengths(shape: Tree, lengths) -> Tree:
    """Assign lengths to internal edges in depth-first (pre-order) order."""
    it = iter(lengths)
    def go(nd, at_root):
        if nd.is_leaf:
            return nd
        kids = tuple(go(c, False) for c in nd.children)
        ln = None if at_root else Fraction(next(it))
        return Tree(nd.kind, kids, ln)
    out = go(shape, True)
    leftover = next(it, None)
    if leftover is not None:
        raise DomainError("too many lengths for this shape")
    return out


def repaint(t: Tree, kind_map: dict) -> Tree:
    """Replace vertex kinds according to ``kind_map`` (leaves untouched)."""
    if t.is_leaf:
        return t
    return Tree(kind_map.get(t.kind, t.kind),
                tuple(repaint(c, kind_map) for c in t.children), t.length)


# ---------------------------------------------------------------------------
# validation

def violations(t: Tree) -> str | None:
    """Return the first violated tree invariant, or None if the tree is valid."""
    if t.is_leaf:
        return "a tree must have at least one internal vertex"
    if t.kind not in _INTERNAL_KINDS:
        return f"unknown vertex kind {t.kind!r}"
    if t.length is not None:
        return "root edge carries no length"

    painted = is_painted(t)
    if t.kind == TYPE_I:
        return "root edge must be painted"
    metric_flags = []

    def check(nd, at_root):
        if nd.is_leaf:
            if nd.length is not None:
                return "leaf edge carries no length"
            return None
        if nd.kind not in _INTERNAL_KINDS:
            return f"unknown vertex kind {nd.kind!r}"
        if painted and nd.kind == UNPAINTED:
            return "unpainted-tree vertex inside a painted tree"
        if not painted and nd.kind != UNPAINTED:
            return "painted vertex inside an unpainted tree"
        arity = len(nd.children)
        if nd.kind == UNPAINTED and arity < 2:
            return "vertex with exactly two edges"
        if nd.kind in (TYPE_I, TYPE_II) and arity < 2:
            return f"Type {'I' if nd.kind == TYPE_I else 'II'} vertex needs at least 2 incoming edges"
        if nd.kind == TYPE_III and arity < 1:
            return "Type III vertex needs at least 1 incoming edge"
        if nd.kind in (TYPE_I, TYPE_III):
            for c in nd.children:
                if c.kind in _PAINTED_OUT:
                    return "painted incoming edge at a Type I/III vertex"
        if nd.kind == TYPE_II:
            for c in nd.children:
                if c.kind not in _PAINTED_OUT:
                    return "unpainted incoming edge at a Type II vertex"
        if not at_root:
            metric_flags.append(nd.length is not None)
            if nd.length is not None and not (0 <= nd.length <= 1):
                return "edge length outside [0, 1]"
        for c in nd.children:
            msg = check(c, False)
            if msg:
                return msg
        return None

    msg = check(t, True)
    if msg:
        return msg
    if metric_flags and any(metric_flags) and not all(metric_flags):
        return "some internal edges carry lengths and some do not"
    return None


def validate(t: Tree) -> str | None:
    """Alias of :func:`violations` (total; returns a report, never raises)."""
    return violations(t)


def require_valid(t: Tree, what: str = "tree") -> None:
    msg = violations(t)
    if msg:
        raise DomainError(f"invalid {what}: {msg}")


# ---------------------------------------------------------------------------
# canonical grammar

def format_length(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode(t: Tree) -> str:
    """Canonical encoding; tree equality is string equality of encodings."""
    if t.is_leaf:
        return "*"
    prefix = "" if t.kind == UNPAINTED else t.kind
    body = prefix + "(" + " ".join(encode(c) for c in t.children) + ")"
    if t.length is not None:
        body += "@" + format_length(t.length)
    return body


def parse(s: str) -> Tree:
    """Parse the canonical grammar.  Inverse of :func:`encode`."""
    pos = 0
    n = len(s)

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def parse_fraction():
        nonlocal pos
        start = pos
        if pos < n and s[pos] == "-":
            pos += 1
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos == start:
            raise GrammarError(f"expected a number at position {start}")
        num = int(s[start:pos])
        den = 1
        if pos < n and s[pos] == "/":
            pos += 1
            dstart = pos
            while pos < n and s[pos].isdigit():
                pos += 1
            if pos == dstart:
                raise GrammarError(f"expected a denominator at position {dstart}")
            den = int(s[dstart:pos])
            if den == 0:
                raise GrammarError("zero denominator")
        return Fraction(num, den)

    def parse_node():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise GrammarError("unexpected end of input")
        ch = s[pos]
        if ch == "*":
            pos += 1
            return LEAF_TREE
        kind = UNPAINTED
        if ch in (TYPE_I, TYPE_II, TYPE_III) and pos + 1 < n and s[pos + 1] == "(":
            kind = ch
            pos += 1
            ch = s[pos]
        if ch != "(":
            raise GrammarError(f"unexpected character {ch!r} at position {pos}")
        pos += 1
        children = []
        while True:
            skip_ws()
            if pos >= n:
                raise GrammarError("unbalanced parentheses")
            if s[pos] == ")":
                pos += 1
                break
            children.append(parse_node())
        if not children:
            raise GrammarError("internal vertex with no children")
        length = None
        if pos < n and s[pos] == "@":
            pos += 1
            length = parse_fraction()
        return Tree(kind, tuple(children), length)

    t = parse_node()
    skip_ws()
    if pos != n:
        raise GrammarError(f"trailing input at position {pos}")
    if t.length is not None:
        raise GrammarError("root edge carries no length")
    return t


def to_json(t: Tree) -> dict:
    """JSON export: {"kind": "unpainted|painted", "leaves": n, "encoding": ...}."""
    return {
        "kind": "painted" if is_painted(t) else "unpainted",
        "leaves": leaf_count(t),
        "encoding": encode(t),
    }


# ---------------------------------------------------------------------------
# reduction and point equality

def reduce_tree(t: Tree) -> Tree:
    """Collapse all zero-length internal edges, uniting their end vertices.

    Raises :class:`PaintedMergeError` if a union would create a vertex with
    mixed painted/unpainted incoming edges (cannot happen for trees built by
    this library's grafting constructors).
    """
    require_valid(t, "metric tree")
    if not is_metric(t):
        raise DomainError("reduce requires a metric tree")

    def go(nd):
        if nd.is_leaf:
            return nd
        kids = []
        for c in nd.children:
            c2 = go(c)
            if c2.length == 0:
                kids.extend(c2.children)
            else:
                kids.append(c2)
        kind = nd.kind
        if kind != UNPAINTED:
            if kind in _PAINTED_OUT:
                in_painted = [k.kind in _PAINTED_OUT for k in kids]
                if all(in_painted):
                    kind = TYPE_II
                elif not any(in_painted):
                    kind = TYPE_III
                else:
                    raise PaintedMergeError(
                        "uniting vertices would mix painted and unpainted incoming edges")
            else:
                kind = TYPE_I
        return Tree(kind, tuple(kids), nd.length)

    return go(t)


def equal_as_points(a: Tree, b: Tree) -> bool:
    """True iff the two metric trees reduce to the same tree (same point)."""
    if leaf_count(a) != leaf_count(b) or is_painted(a) != is_painted(b):
        raise DomainMismatchError("operands differ in leaf count or paint flag")
    if a == b:
        return True
    return reduce_tree(a) == reduce_tree(b)


# ---------------------------------------------------------------------------
# enumeration

def _compositions(total: int, parts: int):
    """All ordered compositions of ``total`` into ``parts`` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _binary_subtrees(n: int, kind: str) -> tuple:
    if n == 1:
        return (LEAF_TREE,)
    out = []
    for i in range(1, n):
        for a in _binary_subtrees(i, kind):
            for b in _binary_subtrees(n - i, kind):
                out.append(Tree(kind, (a, b)))
    return tuple(out)


@lru_cache(maxsize=None)
def _planar_subtrees(n: int, kind: str) -> tuple:
    """All subtrees with every internal vertex of arity >= 2 (leaf when n = 1)."""
    if n == 1:
        return (LEAF_TREE,)
    out = []
    for m in range(2, n + 1):
        for parts in _compositions(n, m):
            for combo in product(*(_planar_subtrees(p, kind) for p in parts)):
                out.append(Tree(kind, combo))
    return tuple(out)


@lru_cache(maxsize=None)
def _binary_painted_subtrees(n: int) -> tuple:
    out = [Tree(TYPE_III, (u,)) for u in _binary_subtrees(n, TYPE_I)]
    for i in range(1, n):
        for a in _binary_painted_subtrees(i):
            for b in _binary_painted_subtrees(n - i):
                out.append(Tree(TYPE_II, (a, b)))
    return tuple(out)


@lru_cache(maxsize=None)
def _painted_subtrees(n: int) -> tuple:
    """All painted trees with n leaves (Type I/II arity >= 2, Type III >= 1)."""
    out = []
    for m in range(1, n + 1):
        for parts in _compositions(n, m):
            for combo in product(*(_planar_subtrees(p, TYPE_I) for p in parts)):
                out.append(Tree(TYPE_III, combo))
    for m in range(2, n + 1):
        for parts in _compositions(n, m):
            for combo in product(*(_painted_subtrees(p) for p in parts)):
                out.append(Tree(TYPE_II, combo))
    return tuple(out)


def enumerate_binary_unpainted(n: int) -> tuple:
    """All binary unpainted trees with n leaves, sorted by encoding."""
    if n < 2:
        raise DomainError("an unpainted tree needs at least 2 leaves")
    return tuple(sorted(_binary_subtrees(n, UNPAINTED), key=encode))


def enumerate_planar_trees(n: int) -> tuple:
    """All unpainted trees (arities >= 2) with n leaves, sorted by encoding."""
    if n < 2:
        raise DomainError("an unpainted tree needs at least 2 leaves")
    return tuple(sorted(_planar_subtrees(n, UNPAINTED), key=encode))


def enumerate_binary_painted(n: int) -> tuple:
    """All binary painted tree shapes with n leaves, sorted by encoding."""
    if n < 1:
        raise DomainError("a painted tree needs at least 1 leaf")
    return tuple(sorted(_binary_painted_subtrees(n), key=encode))


def enumerate_painted_shapes(n: int) -> tuple:
    """All painted tree shapes with n leaves (any arities), sorted by encoding."""
    if n < 1:
        raise DomainError("a painted tree needs at least 1 leaf")
    return tuple(sorted(_painted_subtrees(n), key=encode))


def corolla(n: int) -> Tree:
    """The unpainted tree with a single internal vertex and n leaves."""
    if n < 2:
        raise DomainError("a corolla needs at least 2 leaves")
    return Tree(UNPAINTED, (LEAF_TREE,) * n)


def painted_corolla(n: int) -> Tree:
    """The painted tree with a single Type III vertex and n leaves."""
    if n < 1:
        raise DomainError("a painted corolla needs at least 1 leaf")
    return Tree(TYPE_III, (LEAF_TREE,) * n)
