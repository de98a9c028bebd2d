"""Command-line surface.

Subcommands: coeff (single coefficient or full profile), table1 (recompute
the stored height records), mpq (exact class record M(p;q)), verify (named
invariant suites), analyze (per-index structure dump).

Formats: human (default), json (one envelope with tool_version, seed,
config and results, byte-stable for fixed inputs), csv (per-row dumps).
Diagnostics go to stderr.  Exit codes: 0 success, 1 verification failure,
2 stored-reference mismatch, 3 resource cap, 4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict

import numpy as np

from .bounds import beiter_bound_mpq
from .cache import HeightCache
from .config import DEFAULT_DEGREE_CAP, TOOL_VERSION, cache_path_from_env
from .errors import (
    CycloError,
    DegreeCapExceededError,
    MismatchError,
    SearchExhaustedError,
    ValidationError,
)
from .heights import height, m_of_p_q
from .numtheory import factorize, make_triple, totient
from .refvalues import HEIGHT_RECORDS
from .structure import (
    build_context,
    cancellation_bounds_check,
    classify_all,
    conditional_lemma_battery,
    h_spectrum_check,
    shift_lemma_check,
    tail_sum_diagnostic,
)
from .ternary import (
    chi_profile,
    cross_validate,
    cyclotomic_coefficient,
    dense_phi,
    reduce_index,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_REFERENCE = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 4


def _emit_json(args, results: list) -> None:
    # parallelism is deliberately not echoed: reports must be byte-identical
    # across worker counts.
    payload = {
        "tool_version": TOOL_VERSION,
        "seed": args.seed,
        "config": {
            "degree_cap": args.degree_cap,
            "cache": args.cache,
        },
        "results": results,
    }
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _full_profile(n: int, method: str, degree_cap: int) -> np.ndarray:
    """Coefficient vector of Phi_n for any supported n.

    Computes the profile of the odd squarefree radical and stretches the
    indices back out; even n additionally alternates signs."""
    if n == 1:
        return np.array([-1, 1], dtype=np.int64)
    e2 = (n & -n).bit_length() - 1
    if n >> e2 == 1:
        half = 1 << (e2 - 1)
        out = np.zeros(half + 1, dtype=np.int64)
        out[0] = out[half] = 1
        return out
    rad, _ = reduce_index(n)
    deg_n = totient(n)
    if deg_n > degree_cap:
        raise DegreeCapExceededError(n=n, degree=deg_n, cap=degree_cap)
    primes = [p for p, _ in factorize(rad)]
    if method == "chi" and len(primes) == 3:
        base = chi_profile(make_triple(*primes), degree_cap=degree_cap).coeffs
    elif method == "both" and len(primes) == 3:
        cross_validate(make_triple(*primes), degree_cap=degree_cap)
        base = dense_phi(rad, degree_cap=degree_cap).coeffs
    else:
        base = dense_phi(rad, degree_cap=degree_cap).coeffs
    stretch = deg_n // (len(base) - 1)
    signed = base.copy()
    if e2 >= 1:
        signed[1::2] *= -1
    out = np.zeros(deg_n + 1, dtype=np.int64)
    out[np.arange(len(base)) * stretch] = signed
    return out


def cmd_coeff(args) -> int:
    if args.k is not None:
        value = cyclotomic_coefficient(args.n, args.k, method=args.method)
        if args.format == "json":
            _emit_json(
                args,
                [{"n": args.n, "k": args.k, "method": args.method, "value": value}],
            )
        elif args.format == "csv":
            w = _csv_writer()
            w.writerow(["n", "k", "value"])
            w.writerow([args.n, args.k, value])
        else:
            print(value)
        return EXIT_OK
    coeffs = _full_profile(args.n, args.method, args.degree_cap)
    if args.format == "json":
        _emit_json(
            args,
            [
                {
                    "n": args.n,
                    "degree": len(coeffs) - 1,
                    "method": args.method,
                    "coefficients": [int(c) for c in coeffs],
                }
            ],
        )
    elif args.format == "csv":
        w = _csv_writer()
        w.writerow(["k", "value"])
        for k, c in enumerate(coeffs):
            w.writerow([k, int(c)])
    else:
        height_abs = int(np.abs(coeffs).max())
        print(f"n={args.n} degree={len(coeffs) - 1} height={height_abs}")
        print(" ".join(str(int(c)) for c in coeffs))
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = []
    all_match = True
    for rec in HEIGHT_RECORDS:
        rep = height(rec.n, method=args.method, degree_cap=args.degree_cap)
        match = (
            rep.height == rec.m_p
            and rep.smallest_k == rec.smallest_k
            and rep.value_at_k == rec.value
        )
        all_match &= match
        rows.append(
            {
                "p": rec.p,
                "n": rec.n,
                "smallest_k": rep.smallest_k,
                "value": rep.value_at_k,
                "height": rep.height,
                "expected_smallest_k": rec.smallest_k,
                "expected_value": rec.value,
                "match": match,
            }
        )
    if args.format == "json":
        _emit_json(args, rows)
    elif args.format == "csv":
        w = _csv_writer()
        w.writerow(["p", "n", "smallest_k", "value", "height", "match"])
        for row in rows:
            w.writerow(
                [
                    row["p"],
                    row["n"],
                    row["smallest_k"],
                    row["value"],
                    row["height"],
                    row["match"],
                ]
            )
    else:
        print(f"{'p':>3} {'n':>8} {'smallest k':>10} {'value':>6}  status")
        for row in rows:
            status = "ok" if row["match"] else "MISMATCH"
            print(
                f"{row['p']:>3} {row['n']:>8} {row['smallest_k']:>10} "
                f"{row['value']:>+6d}  {status}"
            )
    if not all_match:
        print("table1: recomputed rows deviate from stored records", file=sys.stderr)
        return EXIT_REFERENCE
    return EXIT_OK


def cmd_mpq(args) -> int:
    cache = HeightCache(args.cache or cache_path_from_env())
    result = m_of_p_q(
        args.p,
        args.q,
        degree_cap=args.degree_cap,
        cache=cache,
        jobs=args.parallelism,
    )
    bound = beiter_bound_mpq(args.p, args.q)
    saturated = result.value == bound
    att = result.attaining
    if args.format == "json":
        out = {
            "p": args.p,
            "q": args.q,
            "value": result.value,
            "residue_bound": bound,
            "saturated": saturated,
            "attaining": {
                "residue": att.residue,
                "witness": att.witness,
                "height": att.height,
                "smallest_k": att.smallest_k,
                "value_at_k": att.value_at_k,
            },
        }
        if args.per_class:
            out["classes"] = [
                {
                    "residue": r.residue,
                    "witness": r.witness,
                    "height": r.height,
                    "smallest_k": r.smallest_k,
                    "value_at_k": r.value_at_k,
                }
                for r in result.rows
            ]
        _emit_json(args, [out])
    elif args.format == "csv":
        w = _csv_writer()
        w.writerow(["residue", "witness", "height", "smallest_k", "value_at_k"])
        rows = result.rows if args.per_class else (att,)
        for r in rows:
            w.writerow([r.residue, r.witness, r.height, r.smallest_k, r.value_at_k])
    else:
        print(f"M({args.p};{args.q}) = {result.value}")
        print(f"residue-only bound m = {bound}" + (" (saturated)" if saturated else ""))
        print(
            f"attained in class {att.residue} by r = {att.witness} "
            f"at k = {att.smallest_k} (value {att.value_at_k:+d})"
        )
        if args.per_class:
            print(f"{'residue':>8} {'witness':>8} {'height':>6} {'smallest k':>10}")
            for r in result.rows:
                print(
                    f"{r.residue:>8} {r.witness:>8} {r.height:>6} {r.smallest_k:>10}"
                )
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(
        args.suite,
        trials=args.trials,
        seed=args.seed,
        degree_cap=args.degree_cap,
    )
    if args.format == "json":
        _emit_json(args, [asdict(report)])
    elif args.format == "csv":
        w = _csv_writer()
        w.writerow(["suite", "checks", "failures", "passed"])
        w.writerow([report.name, report.checks, len(report.failures), report.passed])
    else:
        status = "PASS" if report.passed else "FAIL"
        print(f"{report.name}: {status} ({report.checks} checks)")
        for key in sorted(report.details):
            print(f"  {key} = {report.details[key]}")
        if report.failures:
            print(f"first counterexample: {report.failures[0]}")
    if not report.passed:
        print(f"verify {report.name}: {len(report.failures)} failures", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_analyze(args) -> int:
    t = make_triple(args.p, args.q, args.r)
    if args.i is None:
        rep = height(t.n, method="chi", degree_cap=args.degree_cap)
        i = rep.smallest_k
    else:
        i = args.i
    ctx = build_context(t, i, args.j)
    analysis = classify_all(ctx)
    shift = shift_lemma_check(ctx)
    cancel = cancellation_bounds_check(ctx, analysis)
    spectrum = h_spectrum_check(ctx, analysis)
    battery = conditional_lemma_battery(ctx, analysis)
    diag = tail_sum_diagnostic(ctx)
    sizes = analysis.sizes
    s_minus_n = sizes["special"] - sizes["null"]
    ok = (
        shift.passed
        and cancel.passed
        and spectrum.passed
        and battery.all_ok
    )
    if args.format == "json":
        _emit_json(
            args,
            [
                {
                    "p": t.p,
                    "q": t.q,
                    "r": t.r,
                    "i": ctx.i,
                    "j": ctx.j,
                    "residues": {
                        "q_p_star": t.q_p_star,
                        "r_p_star": t.r_p_star,
                        "p_q_star": t.p_q_star,
                    },
                    "rows": [
                        {
                            "v": row.v,
                            "kind": row.kind.value,
                            "low": row.low,
                            "bracket_v": row.bracket_v,
                            "bracket_v_shift": row.bracket_v_shift,
                            "h": row.h,
                            "h_q": row.h_q,
                        }
                        for row in analysis.rows
                    ],
                    "sizes": sizes,
                    "s_minus_n": s_minus_n,
                    "v0": analysis.v0,
                    "s0": sorted(analysis.s0),
                    "shift_passed": shift.passed,
                    "cancellation": {
                        "tail_sum": cancel.tail_sum,
                        "head_sum": cancel.head_sum,
                        "tail_bound": cancel.tail_bound,
                        "head_bound": cancel.head_bound,
                        "passed": cancel.passed,
                    },
                    "spectrum": list(spectrum.spectrum),
                    "spectrum_passed": spectrum.passed,
                    "battery": [
                        {
                            "name": e.name,
                            "status": e.status,
                            "instances": e.instances,
                        }
                        for e in battery.entries
                    ],
                    "chain_ok": battery.chain_ok,
                    "tail_diagnostic": {
                        "max_abs": diag.max_abs,
                        "best_j": diag.best_j,
                        "tail_at_j": diag.tail_at_j,
                    },
                }
            ],
        )
    elif args.format == "csv":
        w = _csv_writer()
        w.writerow(["v", "kind", "low", "bracket_v", "bracket_v_shift", "h", "h_q"])
        for row in analysis.rows:
            w.writerow(
                [
                    row.v,
                    row.kind.value,
                    row.low,
                    row.bracket_v,
                    row.bracket_v_shift,
                    row.h,
                    row.h_q,
                ]
            )
    else:
        print(
            f"p={t.p} q={t.q} r={t.r} i={ctx.i} j={ctx.j} "
            f"q*={t.q_p_star} r*={t.r_p_star}"
        )
        print(f"{'v':>4} {'kind':<11} {'side':<4} {'[v]':>5} {'[v-r*]':>6} {'h':>5}")
        for row in analysis.rows:
            side = "low" if row.low else "high"
            print(
                f"{row.v:>4} {row.kind.value:<11} {side:<4} "
                f"{row.bracket_v:>5} {row.bracket_v_shift:>6} {row.h:>5}"
            )
        print(
            f"sizes: S={sizes['special']} P+={sizes['plain_plus']} "
            f"P-={sizes['plain_minus']} N={sizes['null']}  |S|-|N|={s_minus_n}"
        )
        print(f"v0={analysis.v0} S0={sorted(analysis.s0)}")
        print(f"h spectrum mod q: {sorted(spectrum.spectrum)}")
        print(
            f"tail={cancel.tail_sum} (bound {cancel.tail_bound})  "
            f"head={cancel.head_sum} (bound {cancel.head_bound})"
        )
        print(f"shift lemma: {'pass' if shift.passed else 'FAIL'}")
        chain_note = "holds" if battery.chain_ok else "fails"
        print(f"chain {chain_note}; battery:")
        for e in battery.entries:
            print(f"  {e.name:<24} {e.status:<8} ({e.instances} instances)")
        print(
            f"tail diagnostic: max |tail| = {diag.max_abs} at j' = {diag.best_j}; "
            f"tail at j = {diag.tail_at_j}"
        )
    return EXIT_OK if ok else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "json", "csv"),
        default="human",
        help="output format (default: human)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized work")
    common.add_argument(
        "--cache", default=None, help="height cache path (overrides CYCLO_CACHE)"
    )
    common.add_argument(
        "--degree-cap",
        dest="degree_cap",
        type=int,
        default=DEFAULT_DEGREE_CAP,
        help="refuse profiles above this degree",
    )
    common.add_argument(
        "--parallelism", type=int, default=1, help="worker processes for class scans"
    )

    parser = argparse.ArgumentParser(
        prog="cyclo",
        description="Coefficients, heights and structure of cyclotomic "
        "polynomials with at most three odd prime factors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeff = sub.add_parser(
        "coeff",
        parents=[common],
        help="one coefficient of Phi_n, or the full profile without --k",
    )
    p_coeff.add_argument("--n", type=int, required=True)
    p_coeff.add_argument("--k", type=int, default=None)
    p_coeff.add_argument(
        "--method",
        choices=("dense", "chi", "both"),
        default="chi",
        help="route for three-factor queries; both cross-checks",
    )
    p_coeff.set_defaults(func=cmd_coeff)

    p_table1 = sub.add_parser(
        "table1",
        parents=[common],
        help="recompute the stored height records and compare",
    )
    p_table1.add_argument(
        "--method", choices=("dense", "chi"), default="dense"
    )
    p_table1.set_defaults(func=cmd_table1)

    p_mpq = sub.add_parser(
        "mpq",
        parents=[common],
        help="exact class record M(p;q) over all witness classes",
    )
    p_mpq.add_argument("--p", type=int, required=True)
    p_mpq.add_argument("--q", type=int, required=True)
    p_mpq.add_argument(
        "--per-class",
        dest="per_class",
        action="store_true",
        help="include every class row in the output",
    )
    p_mpq.set_defaults(func=cmd_mpq)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run a named invariant suite"
    )
    p_verify.add_argument("--suite", choices=sorted(SUITES), required=True)
    p_verify.add_argument(
        "--trials", type=int, default=None, help="randomized suites only"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_analyze = sub.add_parser(
        "analyze",
        parents=[common],
        help="per-index structure analysis of one (p, q, r, i, j)",
    )
    p_analyze.add_argument("--p", type=int, required=True)
    p_analyze.add_argument("--q", type=int, required=True)
    p_analyze.add_argument("--r", type=int, required=True)
    p_analyze.add_argument(
        "--i", type=int, default=None, help="default: smallest index of max |a(k)|"
    )
    p_analyze.add_argument(
        "--j", type=int, default=None, help="default: the smallest reachable m"
    )
    p_analyze.set_defaults(func=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except MismatchError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    except (DegreeCapExceededError, SearchExhaustedError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValidationError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CycloError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
