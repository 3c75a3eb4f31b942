"""Command-line surface.

Subcommands mirror the library: ``trees`` (enumerate / reduce / graft /
level-test), ``complex`` (build / f-vector / euler / homology / export),
``gauge`` (epsilon / divisor / decide / congruence / unit-class /
lower-bound) and ``verify relations``.  All numeric output is exact; byte
output is deterministic for fixed arguments.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import complexes, gauge, grafting, trees
from .trees import DomainError


def _fractions_arg(text):
    try:
        return [Fraction(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}: {exc}")


def _primes_arg(text):
    try:
        values = [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}: {exc}")
    return gauge.PrimeSet(tuple(values))


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _read_tree(args):
    if args.tree:
        return [trees.parse(t) for t in args.tree]
    data = sys.stdin.read().strip()
    if not data:
        raise DomainError("no tree given (use --tree or stdin)")
    return [trees.parse(line) for line in data.splitlines() if line.strip()]


def _emit(args, text_lines, json_obj):
    if args.json:
        print(json.dumps(json_obj, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# trees

def cmd_trees_enumerate(args):
    kinds = {
        "binary": trees.enumerate_binary_unpainted,
        "planar": trees.enumerate_planar_trees,
        "painted-binary": trees.enumerate_binary_painted,
        "painted": trees.enumerate_painted_shapes,
    }
    out = kinds[args.kind](args.leaves)
    _emit(args, [trees.encode(t) for t in out], [trees.to_json(t) for t in out])


def cmd_trees_reduce(args):
    (t,) = _read_tree(args)
    r = trees.reduce_tree(t)
    _emit(args, [trees.encode(r)], trees.to_json(r))


def cmd_trees_graft(args):
    ts = _read_tree(args)
    if args.variant == "dk":
        if len(ts) != 2:
            raise DomainError("variant dk needs exactly two trees (host, graft)")
        out = grafting.graft_k(args.k, ts[0], ts[1])
    elif args.variant == "jk":
        if len(ts) != 2:
            raise DomainError("variant jk needs exactly two trees (painted host, unpainted graft)")
        out = grafting.graft_jk(args.k, ts[0], ts[1])
    else:
        if len(ts) < 2:
            raise DomainError("variant kj needs a base tree followed by its painted grafts")
        out = grafting.graft_kj(ts[0], ts[1:])
    _emit(args, [trees.encode(out)], trees.to_json(out))


def cmd_trees_level_test(args):
    (t,) = _read_tree(args)
    ok, witness = grafting.level_witness(t)
    lines = ["level-tree: " + ("true" if ok else "false")]
    if witness:
        lines.append("witness: " + json.dumps(witness, sort_keys=True))
    _emit(args, lines, {"level": ok, "witness": witness})


# ---------------------------------------------------------------------------
# complex

def cmd_complex_build(args):
    cx = complexes.build_complex(args.family, args.n)
    fv = complexes.f_vector(cx)
    _emit(args,
          [f"family={cx.family} n={cx.n} cells={len(cx.labels)} "
           f"f-vector={' '.join(map(str, fv))}"],
          {"family": cx.family, "n": cx.n, "cells": len(cx.labels),
           "f_vector": list(fv)})


def cmd_complex_f_vector(args):
    fv = complexes.f_vector(complexes.build_complex(args.family, args.n))
    _emit(args, [" ".join(map(str, fv))], list(fv))


def cmd_complex_euler(args):
    chi = complexes.euler_characteristic(complexes.build_complex(args.family, args.n))
    _emit(args, [str(chi)], chi)


def cmd_complex_homology(args):
    cx = complexes.build_complex(args.family, args.n)
    betti = complexes.homology_ranks(cx)
    _emit(args, [" ".join(map(str, betti))], list(betti))


def cmd_complex_export(args):
    doc = complexes.export_complex(complexes.build_complex(args.family, args.n))
    print(json.dumps(doc, sort_keys=True))


# ---------------------------------------------------------------------------
# gauge

def cmd_gauge_epsilon(args):
    eps = gauge.epsilon_sequence(args.n)
    _emit(args, [" ".join(gauge.format_rational(e) for e in eps)],
          [gauge.format_rational(e) for e in eps])


def cmd_gauge_divisor(args):
    d = gauge.triviality_divisor(args.n)
    _emit(args, [str(d)], d)


def cmd_gauge_decide(args):
    v = gauge.decide_triviality(args.k, args.primes, args.n)
    _emit(args, [f"{v.verdict} (clause {v.clause}: {v.rule})"], v.to_json())


def cmd_gauge_congruence(args):
    report = gauge.epsilon_congruence(args.p)
    lines = [f"p={report['p']} "
             f"low-terms={'ok' if report['low_terms_integral'] else 'FAIL'} "
             f"half-term={'ok' if report['half_term'] else 'FAIL'} "
             f"top-term={'ok' if report['top_term'] else 'FAIL'}"]
    _emit(args, lines, report)


def cmd_gauge_unit_class(args):
    vec = gauge.local_unit_class(args.k, args.primes)
    text = " ".join("inf" if v is None else str(v) for v in vec)
    _emit(args, [text], ["inf" if v is None else v for v in vec])


def cmd_gauge_lower_bound(args):
    v = gauge.lower_bound_types(args.n, sharper=args.sharper)
    _emit(args, [str(v)], v)


# ---------------------------------------------------------------------------
# verify

def cmd_verify_relations(args):
    report = grafting.verify_graft_relations(args.max_leaves, args.samples)
    lines = [f"checked={report.checked} failures={len(report.failures)}"]
    lines.extend(report.failures)
    _emit(args, lines,
          {"checked": report.checked, "failures": report.failures})
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="stasheff",
        description="Metric-tree associahedra/multiplihedra and exact "
                    "A_n-triviality arithmetic for SU(2) gauge groups over S^4.")
    top.add_argument("--jobs", type=_positive_int, default=1,
                     help="worker count for independent builds (execution is "
                          "currently sequential; output order is deterministic)")
    sub = top.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, **kw):
        p = parent.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit JSON output")
        return p

    tr = sub.add_parser("trees", help="tree enumeration, reduction, grafting")
    trs = tr.add_subparsers(dest="subcommand", required=True)
    p = add(trs, "enumerate", cmd_trees_enumerate)
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--kind", choices=["binary", "planar", "painted-binary", "painted"],
                   default="binary")
    p = add(trs, "reduce", cmd_trees_reduce)
    p.add_argument("--tree", action="append", help="tree in the canonical grammar")
    p = add(trs, "graft", cmd_trees_graft)
    p.add_argument("--variant", choices=["dk", "jk", "kj"], required=True)
    p.add_argument("--k", type=int, default=1, help="leaf index (variants dk, jk)")
    p.add_argument("--tree", action="append", help="operand trees, in order")
    p = add(trs, "level-test", cmd_trees_level_test)
    p.add_argument("--tree", action="append", help="painted metric tree")

    cx = sub.add_parser("complex", help="K_n / L_n / J_n / H_n complexes")
    cxs = cx.add_subparsers(dest="subcommand", required=True)
    for name, fn in [("build", cmd_complex_build), ("f-vector", cmd_complex_f_vector),
                     ("euler", cmd_complex_euler), ("homology", cmd_complex_homology),
                     ("export", cmd_complex_export)]:
        p = add(cxs, name, fn)
        p.add_argument("--family", choices=["K", "L", "J", "H"], required=True)
        p.add_argument("--n", type=int, required=True)

    ga = sub.add_parser("gauge", help="epsilon sequence and triviality decisions")
    gas = ga.add_subparsers(dest="subcommand", required=True)
    p = add(gas, "epsilon", cmd_gauge_epsilon)
    p.add_argument("--n", type=_positive_int, required=True)
    p = add(gas, "divisor", cmd_gauge_divisor)
    p.add_argument("--n", type=_positive_int, required=True)
    p = add(gas, "decide", cmd_gauge_decide)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--primes", type=_primes_arg, required=True,
                   help="comma-separated primes, e.g. 2,3,5")
    p.add_argument("--n", type=_positive_int, required=True)
    p = add(gas, "congruence", cmd_gauge_congruence)
    p.add_argument("--p", type=int, required=True)
    p = add(gas, "unit-class", cmd_gauge_unit_class)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--primes", type=_primes_arg, required=True)
    p = add(gas, "lower-bound", cmd_gauge_lower_bound)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--sharper", action="store_true")

    ve = sub.add_parser("verify", help="exhaustive checks of the grafting relations")
    ves = ve.add_subparsers(dest="subcommand", required=True)
    p = add(ves, "relations", cmd_verify_relations)
    p.add_argument("--max-leaves", type=int, default=5)
    p.add_argument("--samples", type=_fractions_arg, default=[Fraction(0), Fraction(1, 2), Fraction(1)],
                   help="comma-separated edge lengths, e.g. 0,1/2,1")

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
