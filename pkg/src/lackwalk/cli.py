"""Command-line entry point: simulate, sweep, fit, and spectral subcommands."""

from __future__ import annotations

import argparse
import sys

from .core import GridGeometry, Oracle, WalkConfig
from .errors import LackwalkError
from .simulate import run_series
from .spectral import analyze_search, format_report, write_report
from .sweep import (
    LOOP_RULE_4_OVER_N,
    SweepSpec,
    emit_series_csv,
    emit_sweep_csv,
    fit_runtime,
    fit_runtime_with_intercept,
    format_fit,
    format_series_csv,
    parse_sweep_csv,
    run_sweep,
)

ORACLE_CHOICES = [o.value for o in Oracle]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lackwalk",
        description="Search by self-loop-weighted coined quantum walk on the 2D torus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one success-probability series")
    sim.add_argument("--n", type=int, required=True, help="grid side (N = n^2 vertices)")
    loop = sim.add_mutually_exclusive_group(required=True)
    loop.add_argument("--loop-weight", type=float, help="explicit self-loop weight l")
    loop.add_argument(
        "--loop-rule", choices=[LOOP_RULE_4_OVER_N], help="derive l from the grid size"
    )
    sim.add_argument("--oracle", choices=ORACLE_CHOICES, required=True)
    sim.add_argument("--steps", type=int, required=True, help="number of walk steps")
    sim.add_argument("--out", help="series CSV path (stdout when omitted)")

    swp = sub.add_parser("sweep", help="first-peak table over a range of grid sides")
    swp.add_argument("--n-min", type=int, required=True)
    swp.add_argument("--n-max", type=int, required=True)
    loop = swp.add_mutually_exclusive_group(required=True)
    loop.add_argument(
        "--loop-rule", choices=[LOOP_RULE_4_OVER_N], help="derive l from each grid size"
    )
    loop.add_argument("--loop-list", help="comma-separated loop weights applied at every side")
    swp.add_argument("--oracle", choices=ORACLE_CHOICES, required=True)
    swp.add_argument("--out", required=True, help="sweep CSV path")
    swp.add_argument("--stride", type=int, default=1, help="step between grid sides")
    swp.add_argument("--jobs", type=int, default=1, help="worker processes for sweep cells")

    fit = sub.add_parser("fit", help="fit t* = c sqrt(N ln N) to a sweep CSV")
    fit.add_argument("--in", dest="input", required=True, help="sweep CSV path")
    fit.add_argument(
        "--with-intercept",
        action="store_true",
        help="also print a free-intercept fit (diagnostic only)",
    )

    spec = sub.add_parser("spectral", help="framework-fit report for one configuration")
    spec.add_argument("--n", type=int, required=True)
    spec.add_argument("--loop-weight", type=float, required=True)
    spec.add_argument("--oracle", choices=ORACLE_CHOICES, required=True)
    spec.add_argument("--out", help="report path (stdout when omitted)")

    return parser


def _loop_weight_for(args, side: int) -> float:
    if getattr(args, "loop_rule", None) == LOOP_RULE_4_OVER_N:
        return 4.0 / (side * side)
    return float(args.loop_weight)


def _cmd_simulate(args) -> int:
    config = WalkConfig(
        GridGeometry(args.n),
        _loop_weight_for(args, args.n),
        Oracle(args.oracle),
        marked=0,
    )
    series = run_series(config, args.steps)
    if args.out:
        emit_series_csv(series.probabilities, args.out)
    else:
        sys.stdout.write(format_series_csv(series.probabilities))
    return 0


def _cmd_sweep(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise ValueError(f"invalid side range [{args.n_min}, {args.n_max}]")
    if args.stride < 1:
        raise ValueError(f"--stride must be >= 1, got {args.stride}")
    sides = tuple(range(args.n_min, args.n_max + 1, args.stride))
    if args.loop_list is not None:
        weights = tuple(float(part) for part in args.loop_list.split(","))
        spec = SweepSpec(sides, Oracle(args.oracle), loop_weights=weights)
    else:
        spec = SweepSpec(sides, Oracle(args.oracle), loop_rule=args.loop_rule)
    rows = run_sweep(spec, jobs=args.jobs)
    emit_sweep_csv(rows, args.out)
    return 0


def _cmd_fit(args) -> int:
    rows = parse_sweep_csv(args.input)
    fit = fit_runtime(rows)
    sys.stdout.write(format_fit(fit))
    if args.with_intercept:
        slope, intercept = fit_runtime_with_intercept(rows)
        sys.stdout.write(f"slope={slope!r}\nintercept={intercept!r}\n")
    return 0


def _cmd_spectral(args) -> int:
    config = WalkConfig(
        GridGeometry(args.n), args.loop_weight, Oracle(args.oracle), marked=0
    )
    report = analyze_search(config)
    if args.out:
        write_report(report, args.out)
    else:
        sys.stdout.write(format_report(report))
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "fit": _cmd_fit,
    "spectral": _cmd_spectral,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed the diagnostic
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except LackwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
