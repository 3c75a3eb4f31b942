"""Acceptance suite.

Each test checks one acceptance criterion and prints a single PASS/FAIL line
(run pytest with ``-s`` to see them live).  Stated time limits are enforced
with wall-clock assertions.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

from stasheff.complexes import (
    boundary_squares_to_zero, build_complex, euler_characteristic, f_vector,
    homology_ranks,
)
from stasheff.gauge import (
    NOT_TRIVIAL, TRIVIAL, PrimeSet, chern_oracle, decide_triviality,
    epsilon_congruence, epsilon_defining_identity_holds, epsilon_sequence,
    lower_bound_types, triviality_divisor,
)
from stasheff.grafting import is_level_tree, verify_graft_relations
from stasheff.trees import (
    enumerate_binary_painted, enumerate_binary_unpainted,
    enumerate_planar_trees, internal_edge_count, parse, with_lengths,
)
from stasheff.grafting import graft_jk


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "stasheff", *argv],
                          capture_output=True, check=False)


def _report(number, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {status}" + (f" — {detail}" if detail else ""))
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_epsilon_cli_regression():
    start = time.perf_counter()
    proc = _cli("gauge", "epsilon", "--n", "3")
    elapsed = time.perf_counter() - start
    ok = (proc.returncode == 0
          and proc.stdout == b"1/6 -1/180 1/1512\n"
          and elapsed < 1.0)
    _report(1, ok, f"output {proc.stdout!r} in {elapsed:.2f}s (< 1 s)")


def test_criterion_02_oracle_equivalence():
    start = time.perf_counter()
    eq = epsilon_sequence(12) == chern_oracle(12)
    back = all(epsilon_defining_identity_holds(l) for l in range(1, 13))
    elapsed = time.perf_counter() - start
    ok = eq and back and elapsed < 10.0
    _report(2, ok, f"oracle match={eq}, back-substitution={back}, "
                   f"{elapsed:.2f}s (< 10 s)")


def test_criterion_03_divisor():
    d = triviality_divisor(3)
    ok = d == 7560 == 2**3 * 3**3 * 5 * 7
    _report(3, ok, f"divisor(3) = {d} = 2^3*3^3*5*7")


def test_criterion_04_congruences():
    start = time.perf_counter()
    results = {p: epsilon_congruence(p)["ok"] for p in (3, 5, 7, 11, 13)}
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 30.0
    _report(4, ok, f"primes {sorted(results)} all ok, {elapsed:.2f}s (< 30 s)")


def test_criterion_05_decision_table():
    cases = [
        (5, (5,), 2, TRIVIAL, "b"),
        (3, (3,), 2, NOT_TRIVIAL, "d"),
        (9, (3,), 2, TRIVIAL, "d"),
        (1, (2, 3), 1, NOT_TRIVIAL, "e"),
    ]
    bad = []
    for k, primes, n, verdict, clause in cases:
        v = decide_triviality(k, PrimeSet.of(*primes), n)
        if (v.verdict, v.clause) != (verdict, clause):
            bad.append((k, primes, n, v.verdict, v.clause))
    _report(5, not bad, f"{len(cases)} documented verdicts" +
            (f"; mismatches {bad}" if bad else ""))


def test_criterion_06_counting():
    sharp1 = lower_bound_types(1, sharper=True)
    plain3 = lower_bound_types(3)
    ok = sharp1 == 6 and plain3 == 16
    _report(6, ok, f"sharper(1) = {sharp1}, plain(3) = {plain3}")


def test_criterion_07_polytope_small_cases():
    expected = {("K", 2): (1,), ("K", 3): (2, 1), ("K", 4): (5, 5, 1),
                ("J", 1): (1,), ("J", 2): (2, 1), ("J", 3): (6, 6, 1)}
    got = {key: f_vector(build_complex(*key)) for key in expected}
    ok = got == expected
    _report(7, ok, f"f-vectors {sorted(got.items())}")


def test_criterion_08_derived_polytope_case():
    start = time.perf_counter()
    cx = build_complex("K", 5)
    fv = f_vector(cx)
    chi = euler_characteristic(cx)
    elapsed = time.perf_counter() - start
    ok = (fv == (14, 21, 9, 1)
          and fv[0] == len(enumerate_binary_unpainted(5))
          and sum(fv) == len(enumerate_planar_trees(5))
          and chi == 1
          and elapsed < 5.0)
    _report(8, ok, f"K_5 f-vector {fv}, chi = {chi}, {elapsed:.2f}s (< 5 s)")


def test_criterion_09_sphere_certification():
    start = time.perf_counter()
    problems = []
    for n in range(4, 8):
        cx = build_complex("L", n)
        if not boundary_squares_to_zero(cx):
            problems.append(f"L_{n}: dd != 0")
        betti = list(homology_ranks(cx))
        expected = [0] * (n - 2)
        expected[0] = 1
        expected[n - 3] += 1
        if betti != expected:
            problems.append(f"L_{n}: betti {betti}")
    for n in range(3, 6):
        cx = build_complex("H", n)
        if not boundary_squares_to_zero(cx):
            problems.append(f"H_{n}: dd != 0")
        betti = list(homology_ranks(cx))
        expected = [0] * (n - 1)
        expected[0] = 1
        expected[n - 2] += 1
        if betti != expected:
            problems.append(f"H_{n}: betti {betti}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 120.0
    _report(9, ok, f"L_4..L_7 and H_3..H_5 certified, {elapsed:.1f}s (< 2 min)" +
            (f"; problems {problems}" if problems else ""))


def test_criterion_10_relation_suite():
    start = time.perf_counter()
    report = verify_graft_relations(
        6, [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)])
    elapsed = time.perf_counter() - start
    ok = report.ok and elapsed < 120.0
    _report(10, ok, f"{report.checked} checks, {len(report.failures)} failures, "
                    f"{elapsed:.1f}s (< 2 min)")


def test_criterion_11_level_tree_properties():
    half = Fraction(1, 2)
    pool = []
    for n in range(1, 5):
        for rho in enumerate_binary_painted(n):
            base = with_lengths(rho, [Fraction(0)] * internal_edge_count(rho))
            pool.append(base)
            for m in range(2, 8 - n):
                if n + m - 1 > 6:
                    continue
                for tau in enumerate_binary_unpainted(m):
                    piece = with_lengths(tau, [half] * internal_edge_count(tau))
                    for k in range(1, n + 1):
                        pool.append(graft_jk(k, base, piece))
    failures = [t for t in pool if not is_level_tree(t)]
    counterexample = parse("p(b(*)@1 b(*)@1/2)")
    ce_ok = not is_level_tree(counterexample)
    ok = not failures and ce_ok
    _report(11, ok, f"{len(pool)} grafted inputs level, counterexample "
                    f"rejected = {ce_ok}")


def test_criterion_12_cli_determinism():
    commands = [
        ("gauge", "epsilon", "--n", "3"),
        ("gauge", "divisor", "--n", "3"),
        ("gauge", "decide", "--k", "5", "--primes", "5", "--n", "2", "--json"),
        ("gauge", "congruence", "--p", "13", "--json"),
        ("gauge", "lower-bound", "--n", "3"),
        ("gauge", "lower-bound", "--n", "1", "--sharper"),
        ("complex", "f-vector", "--family", "K", "--n", "5"),
        ("complex", "homology", "--family", "L", "--n", "5"),
        ("complex", "export", "--family", "J", "--n", "3"),
        ("trees", "enumerate", "--leaves", "4", "--kind", "painted", "--json"),
        ("trees", "level-test", "--tree", "p(b(*)@1 b(*)@1/2)", "--json"),
        ("verify", "relations", "--max-leaves", "4", "--samples", "0,1/2,1",
         "--json"),
    ]
    unstable = []
    for cmd in commands:
        first, second = _cli(*cmd), _cli(*cmd)
        if (first.stdout, first.returncode) != (second.stdout, second.returncode):
            unstable.append(" ".join(cmd))
    _report(12, not unstable, f"{len(commands)} commands byte-identical" +
            (f"; unstable {unstable}" if unstable else ""))
