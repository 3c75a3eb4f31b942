"""Tests for the exact arithmetic behind A_n-triviality of gauge groups."""

from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stasheff.gauge import (
    ALL_PRIMES, NOT_TRIVIAL, TRIVIAL, UNKNOWN, PrimeSet, TruncatedSeries,
    chern_oracle, decide_triviality, epsilon_congruence,
    epsilon_defining_identity_holds, epsilon_sequence, format_rational,
    in_local_ring, is_prime, local_unit_class, lower_bound_types,
    p_adic_valuation, parse_rational, prime_pi, triviality_divisor,
)
from stasheff.trees import DomainError


def test_epsilon_first_values():
    assert epsilon_sequence(3) == (
        Fraction(1, 6), Fraction(-1, 180), Fraction(1, 1512))
    assert epsilon_sequence(4)[3] == Fraction(-23, 226800)


def test_epsilon_matches_independent_oracle():
    assert epsilon_sequence(8) == chern_oracle(8)


def test_epsilon_defining_identity():
    for l in range(1, 9):
        assert epsilon_defining_identity_holds(l)


def test_divisor_values_and_monotonicity():
    assert triviality_divisor(3) == 7560
    assert 7560 == 2**3 * 3**3 * 5 * 7
    assert triviality_divisor(4) == 226800
    prev = 1
    for n in range(1, 7):
        d = triviality_divisor(n)
        assert d % prev == 0
        prev = d


def test_divisor_is_lcm_of_denominators():
    for n in range(1, 6):
        eps = epsilon_sequence(n)
        assert triviality_divisor(n) == lcm(*(e.denominator for e in eps))


def test_prime_helpers():
    assert [m for m in range(2, 20) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_pi(1) == 0 and prime_pi(2) == 1 and prime_pi(10) == 4
    assert prime_pi(0) == 0


def test_prime_set_and_local_ring():
    ps = PrimeSet.of(2, 3)
    assert in_local_ring(Fraction(1, 5), ps)
    assert not in_local_ring(Fraction(1, 6), ps)
    assert in_local_ring(Fraction(7), ALL_PRIMES)
    assert not in_local_ring(Fraction(1, 2), ALL_PRIMES)
    with pytest.raises(DomainError):
        PrimeSet.of(4)


def test_valuations_and_unit_class():
    assert p_adic_valuation(12, 2) == 2
    assert p_adic_valuation(12, 3) == 1
    assert p_adic_valuation(12, 5) == 0
    assert p_adic_valuation(0, 3) is None
    assert local_unit_class(12, PrimeSet.of(2, 3)) == (2, 1)
    assert local_unit_class(12, PrimeSet.of(5)) == (0,)
    assert local_unit_class(0, PrimeSet.of(3)) == (None,)


def test_rational_formatting():
    assert format_rational(Fraction(-1, 180)) == "-1/180"
    assert format_rational(Fraction(5)) == "5"
    assert parse_rational("-1/180") == Fraction(-1, 180)
    assert parse_rational("5") == Fraction(5)


def test_truncated_series_relations():
    # s^2 = 0, k^2 = 0, b^(n+1) = 0 in the truncated ring
    s = TruncatedSeries.term(3, 1, es=1)
    b = TruncatedSeries.term(3, 1, eb=1)
    k = TruncatedSeries.term(3, 1, ek=1)
    assert (s * s).coeffs == {}
    assert (k * k).coeffs == {}
    assert b.power(4).coeffs == {}
    assert (s * b * k).coefficient(1, 1, 1) == 1
    assert (s + s).coefficient(1, 0, 0) == 2


def test_decision_table_examples():
    cases = [
        (5, (5,), 2, TRIVIAL, "b"),
        (3, (3,), 2, NOT_TRIVIAL, "d"),
        (9, (3,), 2, TRIVIAL, "d"),
        (1, (2, 3), 1, NOT_TRIVIAL, "e"),
    ]
    for k, primes, n, verdict, clause in cases:
        v = decide_triviality(k, PrimeSet.of(*primes), n)
        assert (v.verdict, v.clause) == (verdict, clause), (k, primes, n)


def test_decision_clause_a_small_n():
    v = decide_triviality(1, PrimeSet.of(7), 2)
    assert v.verdict == TRIVIAL and v.clause == "a"


def test_decision_clause_c():
    # singleton {7}, (p-1)/2 < n <= p-2
    assert decide_triviality(7, PrimeSet.of(7), 4).verdict == TRIVIAL
    assert decide_triviality(1, PrimeSet.of(7), 4).verdict == NOT_TRIVIAL


def test_decision_unknown_when_no_clause():
    v = decide_triviality(2 * 226800, PrimeSet.of(2, 3, 5, 7), 4)
    assert v.verdict == UNKNOWN


def test_decision_requires_primes():
    with pytest.raises(DomainError):
        decide_triviality(1, PrimeSet.of(), 2)


@settings(max_examples=80, deadline=None)
@given(k=st.integers(min_value=-200, max_value=200),
       p=st.sampled_from([3, 5, 7, 11]),
       r=st.integers(min_value=1, max_value=50),
       n=st.integers(min_value=1, max_value=10))
def test_decision_depends_only_on_valuation(k, p, r, n):
    if r % p == 0:
        r += 1
    a = decide_triviality(k, PrimeSet.of(p), n)
    b = decide_triviality(k * r, PrimeSet.of(p), n)
    assert (a.verdict, a.clause) == (b.verdict, b.clause)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(min_value=-300, max_value=300),
       n=st.integers(min_value=1, max_value=6))
def test_trivial_requires_divisor(k, n):
    ps = PrimeSet.of(2, 3, 5, 7)
    v = decide_triviality(k, ps, n)
    if v.verdict == TRIVIAL:
        assert all(in_local_ring(k * e, ps) for e in epsilon_sequence(n))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_epsilon_congruence(p):
    report = epsilon_congruence(p)
    assert report["ok"]
    assert report["low_terms_integral"] and report["half_term"] and report["top_term"]


def test_lower_bounds():
    assert lower_bound_types(1) == 4
    assert lower_bound_types(1, sharper=True) == 6
    assert lower_bound_types(3) == 16
    for n in range(1, 8):
        plain = lower_bound_types(n)
        sharp = lower_bound_types(n, sharper=True)
        # the sharper bound trades 2^pi(n+1) for 3^pi(n+1)
        assert sharp * 2 ** prime_pi(n + 1) == plain * 3 ** prime_pi(n + 1)
        assert sharp >= plain
