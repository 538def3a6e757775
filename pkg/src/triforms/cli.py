"""Command-line front end: expansions, classification, scans, and
verification suites with machine-readable output.

Subcommands: expand, classify, verify, takeuchi.  Output is JSON
(canonical, sorted), CSV, or a pretty table; identical invocations
produce byte-identical JSON.  Exit status is nonzero on usage errors or
any verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import gcd

from .dwork import (
    Verdict,
    dwork_set_condition,
    lemma_two_check,
    takeuchi_scan,
    theorem_classifier,
    theorem_threshold,
)
from .errors import TriformsError, VerificationFailure
from .halphen import (
    TriangleType,
    eisenstein_one,
    eisenstein_two,
    hauptmodul_from_halphen,
    solve_halphen,
)
from .hypergeom import HGParams, mirror_map, schwarz_map, series_f, series_g
from .lab import (
    Classification,
    cross_route_consistency,
    dieudonne_check,
    dwork_congruence_check,
    empirical_integrality,
    generator_integrality,
    schwarz_congruence_check,
)
from .rationals import QQ
from .series import TruncatedSeries, log_series

DEFAULT_ORDER = 120

CSV_COLUMNS = ["type", "p", "N", "verdict", "firstNegativeIndex", "minValuation"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def parse_primes(spec: str):
    """Inclusive 'lo..hi' range filtered by primality, or one prime."""
    if ".." in spec:
        lo, hi = spec.split("..")
        return [p for p in range(int(lo), int(hi) + 1) if _is_prime(p)]
    p = int(spec)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [p]


def emit(payload, fmt: str, rows=None):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif fmt == "csv":
        if rows is None:
            raise ValueError("no CSV table for this command")
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in CSV_COLUMNS})
        sys.stdout.write(out.getvalue())
    else:  # pretty
        print(json.dumps(payload, sort_keys=True, indent=2))


def _series_catalog(tri: TriangleType, name: str, n_order: int):
    name = name.lower()
    if name in ("t1", "t2", "t3"):
        sol = solve_halphen(tri, max(n_order, 2))
        return getattr(sol, name).retruncate(n_order).to_json()
    if name == "j":
        sol = solve_halphen(tri, n_order + 2)
        return hauptmodul_from_halphen(sol).to_json()
    if name.startswith("e1_") or name.startswith("e2_"):
        weight = int(name[3:])
        if weight % 2 != 0:
            raise ValueError("generator weights are even: use e.g. E2_4")
        sol = solve_halphen(tri, max(n_order, 2))
        builder = eisenstein_one if name[1] == "1" else eisenstein_two
        return builder(weight // 2, sol).retruncate(n_order).to_json()
    params = HGParams.for_type(tri)
    if name == "f":
        return series_f(params, n_order).to_json()
    if name == "g":
        return series_g(params, n_order).to_json()
    if name == "d":
        return schwarz_map(params, n_order).to_json()
    if name in ("q", "qmap"):
        return mirror_map(params, n_order).q_of_z.to_json()
    if name in ("z", "zmap", "zofq"):
        return mirror_map(params, n_order).z_of_q.to_json()
    raise ValueError(f"unknown series {name!r}; expected one of "
                     "t1,t2,t3,J,E1_2k,E2_2k,F,G,D,qmap,zmap")


def cmd_expand(args) -> int:
    tri = TriangleType.parse(args.type)
    data = _series_catalog(tri, args.series, args.N)
    payload = {"command": "expand", "type": str(tri), "series": args.series,
               "N": args.N, "result": data}
    emit(payload, args.format)
    return 0


def cmd_classify(args) -> int:
    tri = TriangleType.parse(args.type)
    rows = []
    for p in parse_primes(args.primes):
        if gcd(p, tri.conductor) > 1:
            continue
        verdict = theorem_classifier(tri, p)
        entry = verdict.to_json()
        entry["belowTheoremRange"] = p <= theorem_threshold(tri)
        rows.append(entry)
    payload = {"command": "classify", "type": str(tri), "results": rows}
    csv_rows = [{"type": r["type"], "p": r["p"], "N": "",
                 "verdict": r["verdict"], "firstNegativeIndex": "",
                 "minValuation": ""} for r in rows]
    emit(payload, args.format, rows=csv_rows)
    return 0


def _verify_cells(args):
    """Run the selected suite; yield (cell description, ok, extra)."""
    suite = args.suite
    n_order = args.N
    tri = TriangleType.parse(args.type) if args.type else None
    primes = parse_primes(args.primes) if args.primes else []

    if suite == "cross-route":
        for t in [tri] if tri else _default_types():
            report = cross_route_consistency(t, n_order)
            yield f"cross-route {t}", True, {"kappa": report.details["kappa"]}
    elif suite == "dwork":
        for t in [tri] if tri else _default_types():
            for p in primes or _default_primes(t):
                r = dwork_congruence_check(t, p, n_order)
                yield f"dwork {t} p={p}", r.holds(), {}
    elif suite == "schwarz":
        for t in [tri] if tri else _default_types():
            for p in primes or _default_primes(t):
                cong = schwarz_congruence_check(t, p, n_order)
                emp = empirical_integrality(t, p, n_order)
                agree = cong.holds() == (
                    emp.classification is Classification.INTEGRAL_EVIDENCE)
                yield f"schwarz-vs-empirical {t} p={p}", agree, {
                    "congruence": cong.holds(),
                    "verdict": emp.classification.value}
    elif suite == "generators":
        for t in [tri] if tri else _default_types():
            for p in primes or _default_primes(t):
                cells = generator_integrality(t, p, n_order)
                yield f"generators {t} p={p}", True, {
                    lbl: v.classification.value for lbl, v in cells}
    elif suite == "lemma2":
        for p in primes or [5, 7]:
            ok, counter = lemma_two_check(p)
            yield f"lemma2 p={p}", ok, {"counterexamples": len(counter)}
    elif suite == "dieudonne":
        for p in primes or [5, 7]:
            u = log_series(TruncatedSeries([1, 1], n_order))
            r = dieudonne_check(u, p)
            bad = TruncatedSeries([QQ(0), QQ(1, p)], n_order)
            r2 = dieudonne_check(bad, p)
            yield f"dieudonne p={p}", r.holds() and r2.holds(), r.details
    elif suite == "classifier":
        for t in [tri] if tri else _default_types():
            for p in primes or _default_primes(t):
                verdict = theorem_classifier(t, p)
                cond, _ = dwork_set_condition(HGParams.for_type(t), p)
                if verdict.verdict is Verdict.BELOW_THEOREM_RANGE:
                    agree = verdict.conjectural_integral == cond
                else:
                    agree = (verdict.verdict is Verdict.INTEGRAL) == cond
                yield f"classifier {t} p={p}", agree, {}
    elif suite == "remark":
        if not args.long:
            raise VerificationFailure(
                "the 183-term reproduction runs only with --long")
        t = TriangleType(2, 5)
        for p in (11, 19):
            v = empirical_integrality(t, p, 183)
            yield f"remark (2,5) p={p} N=183", (
                v.classification is Classification.INTEGRAL_EVIDENCE), {
                    "minValuation": v.profile.min_valuation}
    else:
        raise ValueError(f"unknown suite {suite!r}")


def _default_types():
    return [TriangleType(2, 3), TriangleType(2, 5), TriangleType(3, 4),
            TriangleType(3, 3), TriangleType(2, None)]


def _default_primes(tri: TriangleType):
    return [p for p in (11, 13, 19, 23) if gcd(p, tri.conductor) == 1]


def cmd_verify(args) -> int:
    cells = []
    failures = []
    for name, ok, extra in _verify_cells(args):
        cells.append({"cell": name, "ok": ok, **extra})
        if not ok:
            failures.append(name)
    cells.sort(key=lambda c: c["cell"])
    payload = {"command": "verify", "suite": args.suite, "N": args.N,
               "cells": cells, "failures": failures}
    emit(payload, args.format)
    if failures:
        raise VerificationFailure(f"failing cells: {failures}")
    return 0


EXPECTED_TAKEUCHI = ["(2,3)", "(2,4)", "(2,6)", "(2,inf)",
                     "(3,3)", "(3,inf)", "(4,4)", "(6,6)"]


def cmd_takeuchi(args) -> int:
    found = sorted(str(t) for t in takeuchi_scan(args.bound))
    payload = {"command": "takeuchi", "bound": args.bound, "types": found,
               "matches_expected": found == sorted(EXPECTED_TAKEUCHI)}
    emit(payload, args.format)
    return 0 if payload["matches_expected"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"],
                        default="json")
    parser = argparse.ArgumentParser(
        prog="triforms",
        description="Exact q-expansions and p-integrality classification "
                    "for hyperbolic triangle groups with a cusp")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    p_expand = sub.add_parser("expand", help="print a q- or z-expansion")
    p_expand.add_argument("--type", required=True, help="m1,m2 ('inf' allowed)")
    p_expand.add_argument("--series", required=True,
                          help="t1|t2|t3|J|E1_2k|E2_2k|F|G|D|qmap|zmap")
    p_expand.add_argument("--N", type=int, default=DEFAULT_ORDER)
    p_expand.set_defaults(func=cmd_expand)

    p_classify = sub.add_parser("classify", help="congruence classifier")
    p_classify.add_argument("--type", required=True)
    p_classify.add_argument("--primes", required=True,
                            help="a prime or an inclusive range lo..hi")
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True,
                          choices=["cross-route", "dwork", "schwarz",
                                   "generators", "lemma2", "dieudonne",
                                   "classifier", "remark"])
    p_verify.add_argument("--type", default=None)
    p_verify.add_argument("--primes", "--p", dest="primes", default=None)
    p_verify.add_argument("--N", type=int, default=60)
    p_verify.add_argument("--long", action="store_true",
                          help="enable long reproductions (183 terms)")
    p_verify.set_defaults(func=cmd_verify)

    p_tak = sub.add_parser("takeuchi", help="scan for almost-integral types")
    p_tak.add_argument("--bound", type=int, default=60)
    p_tak.set_defaults(func=cmd_takeuchi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except (TriformsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
