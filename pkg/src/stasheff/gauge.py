"""Exact arithmetic for A_n-triviality of SU(2) gauge groups over S^4.

Everything here is integer or rational arithmetic: the epsilon sequence and
its Chern-character re-derivation, divisibility criteria, p-local membership,
the triviality decision table, localization invariants, and the type-count
lower bounds.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm

from .trees import DomainError


def format_rational(q: Fraction) -> str:
    """Serialize a rational as "p/q" in lowest terms ("p" for integers)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# primes and prime sets

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_pi(m: int) -> int:
    """Number of primes <= m, by sieve."""
    if m < 0:
        raise DomainError("prime_pi needs a nonnegative argument")
    if m < 2:
        return 0
    sieve = bytearray([1]) * (m + 1)
    sieve[0] = sieve[1] = 0
    p = 2
    while p * p <= m:
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
        p += 1
    return sum(sieve)


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, or the distinguished all-primes set.

    ``primes`` is a sorted tuple for a finite set and ``None`` for the set of
    all primes; the empty tuple models rationalization.
    """

    primes: tuple | None

    def __post_init__(self):
        if self.primes is not None:
            ps = tuple(sorted(set(self.primes)))
            for p in ps:
                if not is_prime(p):
                    raise DomainError(f"{p} is not prime")
            object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, *primes):
        return cls(tuple(primes))

    @property
    def is_all(self) -> bool:
        return self.primes is None

    @property
    def is_finite_nonempty(self) -> bool:
        return self.primes is not None and len(self.primes) > 0


ALL_PRIMES = PrimeSet(None)
NO_PRIMES = PrimeSet(())


def in_local_ring(q: Fraction, pset: PrimeSet) -> bool:
    """True iff q lies in Z_P, i.e. no prime of P divides its denominator."""
    q = Fraction(q)
    if pset.is_all:
        return q.denominator == 1
    return all(q.denominator % p != 0 for p in pset.primes)


def p_adic_valuation(k: int, p: int):
    """v_p(k); None encodes the infinite valuation of 0."""
    if k == 0:
        return None
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def local_unit_class(k: int, pset: PrimeSet) -> tuple:
    """The tuple (v_p(k))_{p in P}; equal tuples give A_oo-equivalent
    P-localized gauge groups (multiplying k by a unit of Z_P changes nothing).
    """
    if not pset.is_finite_nonempty:
        raise DomainError("local_unit_class needs a finite nonempty prime set")
    return tuple(p_adic_valuation(k, p) for p in pset.primes)


# ---------------------------------------------------------------------------
# epsilon sequence

@lru_cache(maxsize=None)
def _composition_sum(parts: int, total: int) -> Fraction:
    """Sum over compositions total = j_1+...+j_parts (j_r >= 1) of
    1/((2 j_1)! ... (2 j_parts)!)."""
    if parts == 1:
        return Fraction(1, factorial(2 * total))
    acc = Fraction(0)
    for j in range(1, total - parts + 2):
        acc += Fraction(1, factorial(2 * j)) * _composition_sum(parts - 1, total - j)
    return acc


@lru_cache(maxsize=None)
def _epsilon(l: int) -> Fraction:
    # 1/(2l+1)! = sum_{i=1}^{l} 2^i eps_i * C(i,l); the i = l term is eps_l.
    value = Fraction(1, factorial(2 * l + 1))
    for i in range(1, l):
        value -= (2 ** i) * _epsilon(i) * _composition_sum(i, l)
    return value


def epsilon_sequence(n: int) -> tuple:
    """The exact rationals eps_1 .. eps_n from the obstruction recursion."""
    if n < 1:
        raise DomainError("epsilon_sequence needs n >= 1")
    return tuple(_epsilon(l) for l in range(1, n + 1))


def epsilon_defining_identity_holds(l: int) -> bool:
    """Back-substitution check: the eps values reproduce 1/(2l+1)! exactly."""
    acc = sum((2 ** i) * _epsilon(i) * _composition_sum(i, l)
              for i in range(1, l + 1))
    return acc == Fraction(1, factorial(2 * l + 1))


# ---------------------------------------------------------------------------
# Chern-character oracle

class TruncatedSeries:
    """Polynomials over Q in generators s, b, k with s^2 = 0, k^2 = 0 and
    b^(m+1) = 0 for a fixed truncation order m.

    Coefficients are stored on monomial exponent triples (e_s, e_b, e_k) in
    lowest terms.  ``k`` plays the role of an indeterminate scalar of weight
    one; no k^2 term ever survives since every k rides along with s.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = order
        self.coeffs = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c and self._keep(mono):
                    self.coeffs[mono] = c

    def _keep(self, mono):
        es, eb, ek = mono
        return es <= 1 and ek <= 1 and eb <= self.order

    @classmethod
    def term(cls, order, coeff, es=0, eb=0, ek=0):
        return cls(order, {(es, eb, ek): Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            v = out.get(mono, Fraction(0)) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return TruncatedSeries(self.order, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.order,
                                   {m: c * other for m, c in self.coeffs.items()})
        out = {}
        for (s1, b1, k1), c1 in self.coeffs.items():
            for (s2, b2, k2), c2 in other.coeffs.items():
                mono = (s1 + s2, b1 + b2, k1 + k2)
                if self._keep(mono):
                    out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return TruncatedSeries(self.order, out)

    __rmul__ = __mul__

    def power(self, e):
        acc = TruncatedSeries.term(self.order, 1)
        for _ in range(e):
            acc = acc * self
        return acc

    def coefficient(self, es, eb, ek) -> Fraction:
        return self.coeffs.get((es, eb, ek), Fraction(0))


class InconsistentSystemError(RuntimeError):
    """The triangular system extracted from the Chern expansion degenerated
    (an implementation bug, not a domain state)."""


def chern_oracle(n: int) -> tuple:
    """Re-derive eps_1 .. eps_n independently from the Chern character.

    Expands both sides of the K-theory pullback computation in the truncated
    ring (s^2 = 0, b^(n+1) = 0, k an indeterminate of weight one), equates
    coefficients of s b^l and solves the triangular system.
    """
    if n < 1:
        raise DomainError("chern_oracle needs n >= 1")
    s = TruncatedSeries.term(n, 1, es=1)
    b = TruncatedSeries.term(n, 1, eb=1)
    k = TruncatedSeries.term(n, 1, ek=1)

    ch_a = TruncatedSeries(n)
    for j in range(1, n + 1):
        ch_a = ch_a + Fraction(2, factorial(2 * j)) * b.power(j)

    # The pullback of the full Chern character: terms beyond j = n+1 die in
    # the truncated ring, but the j = n+1 term still contributes k*s*b^n.
    pullback_b = k * s + b
    lhs = TruncatedSeries(n)
    for j in range(1, n + 2):
        lhs = lhs + Fraction(2, factorial(2 * j)) * pullback_b.power(j)

    # k-free parts agree: both reduce to ch a.
    for j in range(1, n + 1):
        if lhs.coefficient(0, j, 0) != ch_a.coefficient(0, j, 0):
            raise InconsistentSystemError("k-free parts of the expansion differ")

    powers = [None] + [ch_a.power(i) for i in range(1, n + 1)]
    eps = []
    for l in range(1, n + 1):
        target = lhs.coefficient(1, l, 1)
        for i in range(l + 1, n + 1):
            if powers[i].coefficient(0, l, 0) != 0:
                raise InconsistentSystemError("system is not triangular")
        acc = target
        for i in range(1, l):
            acc -= eps[i - 1] * powers[i].coefficient(0, l, 0)
        lead = powers[l].coefficient(0, l, 0)
        if lead == 0:
            raise InconsistentSystemError("vanishing leading coefficient")
        eps.append(acc / lead)
    return tuple(eps)


# ---------------------------------------------------------------------------
# divisibility and congruences

def triviality_divisor(n: int) -> int:
    """Least D with D*eps_i integral for all i <= n (lcm of denominators).

    If aut P_k is trivial as a fibrewise A_n-space then D divides k.
    """
    if n < 1:
        raise DomainError("triviality_divisor needs n >= 1")
    return lcm(*(e.denominator for e in epsilon_sequence(n)))


def epsilon_congruence(p: int) -> dict:
    """Check the p-local congruences satisfied by the epsilon sequence.

    For an odd prime p: eps_1 .. eps_{(p-3)/2} are p-integral,
    eps_{(p-1)/2} = 1/p! mod Z_(p), and p*eps_{p-1} = -1/((p+1)!(p-2)!)
    mod Z_(p).  Returns a report dict with one boolean per assertion.
    """
    if not is_prime(p) or p == 2:
        raise DomainError("epsilon_congruence needs an odd prime")
    if p > 13:
        raise DomainError("desk-scale bound: p <= 13")
    local = PrimeSet.of(p)
    eps = epsilon_sequence(p - 1)
    half = (p - 1) // 2
    report = {
        "p": p,
        "low_terms_integral": all(in_local_ring(eps[i - 1], local)
                                  for i in range(1, half)),
        "half_term": in_local_ring(eps[half - 1] - Fraction(1, factorial(p)), local),
        "top_term": in_local_ring(
            p * eps[p - 2] + Fraction(1, factorial(p + 1) * factorial(p - 2)), local),
    }
    report["ok"] = (report["low_terms_integral"] and report["half_term"]
                    and report["top_term"])
    return report


# ---------------------------------------------------------------------------
# decision table

TRIVIAL = "trivial"
NOT_TRIVIAL = "not-trivial"
UNKNOWN = "unknown"

_CLAUSE_TEXT = {
    "a": "p = min P >= 3: always trivial as a fibrewise A_((p-1)/2 - 1)-space",
    "b": "trivial as a fibrewise A_((p-1)/2)-space iff k = 0 mod p",
    "c": "P = {p}: extension over the skeleta gives A_(p-2)-triviality when p | k",
    "d": "P = {p}: trivial as a fibrewise A_(p-1)-space iff k = 0 mod p^2",
    "e": "necessary condition only: k*eps_i must lie in Z_P for all i <= n",
}


@dataclass(frozen=True)
class TrivialityVerdict:
    verdict: str  # trivial | not-trivial | unknown
    clause: str   # a..e
    rule: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "clause": self.clause, "rule": self.rule}


def decide_triviality(k: int, pset: PrimeSet, n: int) -> TrivialityVerdict:
    """Decide A_n-triviality of the P-localized gauge-group bundle aut P_k.

    Applies the theorem-backed clauses when they cover (k, P, n); otherwise
    falls back to the necessary condition k*eps_i in Z_P, answering Unknown
    when that test passes (no sufficient criterion is available there).
    """
    if n < 1:
        raise DomainError("decide_triviality needs n >= 1")
    if not pset.is_finite_nonempty:
        raise DomainError("decide_triviality needs a finite nonempty prime set")
    primes = pset.primes
    p = primes[0]
    singleton = len(primes) == 1

    def verdict(v, clause):
        return TrivialityVerdict(v, clause, _CLAUSE_TEXT[clause])

    if p >= 3:
        half = (p - 1) // 2
        if n <= half - 1:
            return verdict(TRIVIAL, "a")
        if n == half:
            return verdict(TRIVIAL if k % p == 0 else NOT_TRIVIAL, "b")
        if singleton and half < n <= p - 2:
            return verdict(TRIVIAL if k % p == 0 else NOT_TRIVIAL, "c")
        if singleton and n == p - 1:
            return verdict(TRIVIAL if k % (p * p) == 0 else NOT_TRIVIAL, "d")

    for e in epsilon_sequence(n):
        if not in_local_ring(k * e, pset):
            return verdict(NOT_TRIVIAL, "e")
    return verdict(UNKNOWN, "e")


# ---------------------------------------------------------------------------
# counting

def lower_bound_types(n: int, sharper: bool = False) -> int:
    """Lower bound on the number of A_n-types of SU(2) gauge groups over S^4.

    Plain bound: 2^pi(2n+1).  Sharper bound: 2^(pi(2n+1)-pi(n+1)) * 3^pi(n+1).
    """
    if n < 1:
        raise DomainError("lower_bound_types needs n >= 1")
    big = prime_pi(2 * n + 1)
    if not sharper:
        return 2 ** big
    small = prime_pi(n + 1)
    return 2 ** (big - small) * 3 ** small
