"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 analytic comparison failure,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .analytic import COMPARISON_TOL
from .infomeasures import InvariantViolation, Scenario
from .sweep import (
    FORMATS,
    SweepConfig,
    compare_summary_text,
    fmt_num,
    render_compare,
    render_sweep,
    run_compare,
    run_properties,
    run_sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_COMPARE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcmi-accel", description="Conditional mutual information of accelerated W states.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    scenarios = [s.value for s in Scenario]

    def common(sp, default_steps=64):
        sp.add_argument("--steps", type=int, default=default_steps)
        sp.add_argument("--r2", default="locked", help="'locked' (r2 = r1), 'grid', or a fixed value")
        sp.add_argument("--format", dest="fmt", choices=FORMATS, default="csv")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--tolerance", type=float, default=COMPARISON_TOL, help="comparison tolerance in bits")

    sw = sub.add_parser("sweep", help="QCMI and entropies over an r grid")
    sw.add_argument("--scenario", required=True, choices=scenarios, type=str.upper)
    sw.add_argument("--r-min", type=float, default=0.0)
    sw.add_argument("--r-max", type=float, default=None, help="default pi/4")
    sw.add_argument("--compare-analytic", action="store_true", help="add the closed-form spectrum QCMI")
    common(sw)

    cp = sub.add_parser("compare", help="reconcile printed closed forms with the pipeline")
    cp.add_argument("--scenario", choices=scenarios, type=str.upper, help="default: all scenarios")
    common(cp)

    pr = sub.add_parser("properties", help="strong subadditivity on random states")
    pr.add_argument("--seed", type=_u64, default=0)
    pr.add_argument("--count", type=int, default=1000)
    pr.add_argument("--out", help="output path (default: stdout)")
    return p


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _sweep(args) -> int:
    kwargs = {}
    if args.r_max is not None:
        kwargs["r_max"] = args.r_max
    cfg = SweepConfig(
        scenario=args.scenario,
        r_min=args.r_min,
        steps=args.steps,
        r2_mode=args.r2,
        fmt=args.fmt,
        out=args.out,
        compare_analytic=args.compare_analytic,
        tolerance=args.tolerance,
        **kwargs,
    )
    result = run_sweep(cfg)
    _emit(render_sweep(result), cfg.out)
    if cfg.compare_analytic:
        print(
            f"{cfg.scenario.value}: {len(result.rows)} rows, max abs diff {fmt_num(result.max_abs_diff)}, "
            f"{result.status}",
            file=sys.stderr,
        )
        if result.status != "match":
            return EXIT_COMPARE
    return EXIT_OK


def _compare(args) -> int:
    if args.r2 == "grid":
        raise ValueError("compare accepts --r2 locked or a fixed value")
    r2 = None if args.r2 == "locked" else float(args.r2)
    scenarios = [args.scenario] if args.scenario else None
    if r2 is not None:
        scenarios = [s for s in (scenarios or list(Scenario)) if Scenario.parse(s).two_party]
        if not scenarios:
            raise ValueError("a fixed --r2 needs a two-party scenario")
    result = run_compare(scenarios, steps=args.steps, r2_value=r2, tolerance=args.tolerance)
    _emit(render_compare(result, args.fmt), args.out)
    print(compare_summary_text(result), end="", file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK if result.eigen_ok else EXIT_COMPARE


def _properties(args) -> int:
    report = run_properties(args.seed, args.count)
    _emit(report.text(), args.out)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    handler = {"sweep": _sweep, "compare": _compare, "properties": _properties}[args.command]
    try:
        return handler(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"qcmi-accel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
