"""Command-line interface.

Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .cycles import QuadraticMap
from .errors import QuadCycleError
from .families import Family, from_logistic, from_offset
from .report import analyze, sweep_grid, write_sweep
from .verify import MULTIPLIER_TOL, POINT_TOL, compare, run_ensemble


class UsageError(Exception):
    pass


def _finite(*values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise UsageError("all numeric arguments must be finite")


def _dump(report: dict, compact: bool) -> str:
    if compact:
        return json.dumps(report, separators=(",", ":"))
    return json.dumps(report, indent=2)


def cmd_analyze(args) -> int:
    _finite(args.a, args.b, args.c)
    m = QuadraticMap(args.a, args.b, args.c)
    print(_dump(analyze(m), args.compact))
    return 0


def cmd_analyze_offset(args) -> int:
    _finite(args.c)
    print(_dump(analyze(from_offset(args.c), Family.OFFSET, args.c), args.compact))
    return 0


def cmd_analyze_logistic(args) -> int:
    _finite(args.lam)
    print(_dump(analyze(from_logistic(args.lam), Family.LOGISTIC, args.lam), args.compact))
    return 0


def cmd_sweep(args) -> int:
    _finite(args.start, args.stop, args.step)
    if args.step <= 0:
        raise UsageError("--step must be positive")
    family = Family(args.family)
    grid = sweep_grid(args.start, args.stop, args.step)
    if args.out is None or args.out == "-":
        write_sweep(sys.stdout, family, grid)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep(fh, family, grid)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return 1
    return 0


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _verify_one(m: QuadraticMap) -> int:
    cmp = compare(m)
    print(f"map a={m.a!r} b={m.b!r} c={m.c!r} delta={m.delta!r} existence={cmp.existence.value}")
    if cmp.error:
        print(f"FAIL oracle error: {cmp.error}")
        return 1
    print(f"{_status(cmp.counts_agree)} cycle count: closed-form {cmp.closed_count}, oracle {cmp.oracle_count}")
    print(
        f"{_status(cmp.point_deviation <= cmp.point_tol)} max point deviation "
        f"{cmp.point_deviation:.3e} (tol {cmp.point_tol:.0e})"
    )
    print(
        f"{_status(cmp.multiplier_deviation <= cmp.multiplier_tol)} max multiplier deviation "
        f"{cmp.multiplier_deviation:.3e} (tol {cmp.multiplier_tol:.0e})"
    )
    print(_status(cmp.passed))
    return 0 if cmp.passed else 1


def _verify_random(n: int, seed: int) -> int:
    summary = run_ensemble(n, seed)
    counts = ", ".join(f"{k}={v}" for k, v in summary.counts.items())
    print(f"ensemble n={n} seed={seed}: {counts}")
    print(
        f"{_status(summary.max_point_deviation <= POINT_TOL)} max point deviation "
        f"{summary.max_point_deviation:.3e} (tol {POINT_TOL:.0e})"
    )
    print(
        f"{_status(summary.max_multiplier_deviation <= MULTIPLIER_TOL)} max multiplier deviation "
        f"{summary.max_multiplier_deviation:.3e} (tol {MULTIPLIER_TOL:.0e})"
    )
    print(f"{_status(summary.passed)} failures: {len(summary.failures)}")
    for cmp in summary.failures:
        m = cmp.m
        print(
            f"  a={m.a!r} b={m.b!r} c={m.c!r}: closed-form {cmp.closed_count}, oracle {cmp.oracle_count}, "
            f"points {cmp.point_deviation:.3e}, multipliers {cmp.multiplier_deviation:.3e}"
            + (f", {cmp.error}" if cmp.error else "")
        )
    print(_status(summary.passed))
    return 0 if summary.passed else 1


def cmd_verify(args) -> int:
    if args.random is not None:
        if args.random < 1:
            raise UsageError("--random must be at least 1")
        if any(v is not None for v in (args.a, args.b, args.c)):
            raise UsageError("--random cannot be combined with --a/--b/--c")
        return _verify_random(args.random, args.seed)
    if any(v is None for v in (args.a, args.b, args.c)):
        raise UsageError("verify needs --a, --b and --c, or --random N")
    _finite(args.a, args.b, args.c)
    return _verify_one(QuadraticMap(args.a, args.b, args.c))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcycle", description="Existence, location and stability of 3-cycles of x -> a x^2 + b x + c."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify the 3-cycles of one quadratic map")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("analyze-offset", help="analyze x^2 + c")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--compact", action="store_true")
    p.set_defaults(func=cmd_analyze_offset)

    p = sub.add_parser("analyze-logistic", help="analyze lambda x (1 - x)")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--compact", action="store_true")
    p.set_defaults(func=cmd_analyze_logistic)

    p = sub.add_parser("sweep", help="CSV over a parameter range of a classical family")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", help="output path (default: standard output)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check the closed forms against the brute-force oracle")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--random", type=int, metavar="N", help="verify N seeded random maps")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QuadCycleError) as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
