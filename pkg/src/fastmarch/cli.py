"""Command-line front end: solve, oracle, verify, fig1, fig2.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 runtime
(solver, oracle, or experiment) error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import experiments, marcher, plotting, verify
from .grid import BoundarySet, GridSpec, read_speed_csv, write_grid_csv, write_grid_raw
from .queue_exact import ExactQueue
from .queue_untidy import UntidyQueue

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


class UsageError(Exception):
    pass


def _parse_speed_params(pairs) -> dict:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--speed-param expects K=V, got {pair!r}")
        try:
            params[key.replace("-", "_")] = float(value)
        except ValueError:
            raise UsageError(f"--speed-param {key}: not a number: {value!r}") from None
    return params


def _parse_boundary(text: str, spec: GridSpec) -> BoundarySet:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise UsageError(f"--boundary expects 'i,j[;i,j...]', got {chunk!r}")
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"--boundary indices must be integers: {chunk!r}") from None
    try:
        return BoundarySet(spec, points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _build_field(args):
    if args.speed.startswith("file:"):
        path = args.speed[len("file:"):]
        try:
            field = read_speed_csv(path)
        except OSError as exc:
            raise UsageError(f"cannot read speed file: {exc}") from None
        if args.n is not None and args.n != field.spec.n:
            raise UsageError(
                f"--n {args.n} does not match the {field.spec.n}-subdivision "
                f"grid in {path}"
            )
        return field
    if args.n is None:
        raise UsageError("--n is required unless --speed file:PATH is used")
    params = _parse_speed_params(args.speed_param)
    try:
        entry = experiments.speed_entry(args.speed, **params)
    except TypeError as exc:
        raise UsageError(f"bad parameters for speed {args.speed!r}: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        spec = GridSpec(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return entry.build(spec)


def _check_out_path(path) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    if not os.path.isdir(directory):
        raise UsageError(f"output directory does not exist: {directory}")
    if not os.access(directory, os.W_OK):
        raise UsageError(f"output directory is not writable: {directory}")
    if os.path.isdir(path):
        raise UsageError(f"output path is a directory: {path}")


def _print_metrics(metrics: marcher.RunMetrics) -> None:
    print(
        f"cycles={metrics.cycles} pops={metrics.pops} "
        f"stale_skips={metrics.stale_skips} insertions={metrics.insertions} "
        f"reinsertions={metrics.reinsertions} "
        f"bucket_traversals={metrics.bucket_traversals} "
        f"max_point_insertions={metrics.max_point_insertions} "
        f"mean_point_insertions={metrics.mean_point_insertions:.4f}"
    )


def _write_grid(values, path, fmt: str) -> None:
    if fmt == "raw":
        write_grid_raw(values, path)
    else:
        write_grid_csv(values, path)


def cmd_solve(args) -> int:
    if args.queue == "untidy" and args.buckets is None:
        raise UsageError("--queue untidy requires --buckets")
    if args.queue == "exact" and args.buckets is not None:
        raise UsageError("--buckets only applies to --queue untidy")
    if args.buckets is not None and args.buckets < 1:
        raise UsageError(f"--buckets must be >= 1, got {args.buckets}")
    _check_out_path(args.out)
    field = _build_field(args)
    boundary = _parse_boundary(args.boundary, field.spec)
    if args.queue == "untidy":
        queue = UntidyQueue(field.spec.h, field.f_min, args.buckets)
    else:
        queue = ExactQueue()
    solution, metrics = marcher.march(field, boundary, queue)
    _write_grid(solution.values, args.out, args.format)
    _print_metrics(metrics)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.tol <= 0.0:
        raise UsageError(f"--tol must be > 0, got {args.tol!r}")
    _check_out_path(args.out)
    field = _build_field(args)
    boundary = _parse_boundary(args.boundary, field.spec)
    try:
        solution = verify.sweep_oracle(field, boundary, tol=args.tol)
    except verify.VerificationError as exc:
        # non-convergence is an oracle failure, not a verification verdict
        raise RuntimeError(str(exc)) from None
    _write_grid(solution.values, args.out, args.format)
    print(f"sweep converged (tol={args.tol!r})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.buckets < 1:
        raise UsageError(f"--buckets must be >= 1, got {args.buckets}")
    if args.tol <= 0.0:
        raise UsageError(f"--tol must be > 0, got {args.tol!r}")
    field = _build_field(args)
    spec = field.spec
    boundary = _parse_boundary(args.boundary, spec)
    failures = []

    exact_trace: list = []
    exact_solution, _ = marcher.march(field, boundary, ExactQueue(), exact_trace)
    untidy_queue = UntidyQueue(spec.h, field.f_min, args.buckets)
    untidy_trace: list = []
    approx_solution, _ = marcher.march(field, boundary, untidy_queue, untidy_trace)

    oracle = verify.sweep_oracle(field, boundary)
    worst = float(abs(exact_solution.values - oracle.values).max())
    if worst <= args.tol:
        print(f"check oracle-equivalence: ok (max |diff| = {worst:.3e})")
    else:
        failures.append("oracle-equivalence")
        print(f"check oracle-equivalence: FAILED (max |diff| = {worst:.3e})")

    if verify.check_band_trace(exact_trace, spec.h, field.f_min):
        print("check band-width(exact): ok")
    else:
        failures.append("band-width(exact)")
        print("check band-width(exact): FAILED")

    if verify.check_band_trace(
        untidy_trace, spec.h, field.f_min, untidy_queue.delta, untidy=True
    ):
        print("check band-width(untidy): ok")
    else:
        failures.append("band-width(untidy)")
        print("check band-width(untidy): FAILED")

    try:
        report = verify.check_error_bound(
            field,
            boundary,
            args.buckets,
            exact_solution=exact_solution,
            approx_solution=approx_solution,
        )
        print("check error-bound: ok")
        print(report.CSV_HEADER)
        print(report.csv_row())
    except verify.VerificationError as exc:
        failures.append("error-bound")
        print(f"check error-bound: FAILED ({exc})")

    if failures:
        print(f"verification failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _figure_path(out: str) -> str:
    base, _ = os.path.splitext(out)
    return base + ".png"


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated integer list") from None


def _parse_float_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated number list") from None


def cmd_fig1(args) -> int:
    _check_out_path(args.out)
    try:
        cfg = experiments.ExperimentConfig(
            grid_sizes=(args.n,),
            bucket_counts=_parse_int_list(args.buckets, "--buckets"),
            ratios=_parse_float_list(args.ratios, "--ratios"),
            out=args.out,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = experiments.run_error_study(cfg)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_figure:
        figure = _figure_path(args.out)
        plotting.render_error_study(rows, figure)
        print(f"wrote {figure}")
    return EXIT_OK


def cmd_fig2(args) -> int:
    _check_out_path(args.out)
    try:
        cfg = experiments.ExperimentConfig(
            grid_sizes=_parse_int_list(args.sizes, "--sizes"),
            seed=args.seed,
            u_floor=args.u_floor,
            out=args.out,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = experiments.run_scaling_study(cfg)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_figure:
        figure = _figure_path(args.out)
        plotting.render_scaling_study(rows, figure)
        print(f"wrote {figure}")
    return EXIT_OK


def _add_problem_flags(sp) -> None:
    sp.add_argument(
        "--n", type=int, default=None,
        help="grid subdivisions per axis (omit with --speed file:PATH)",
    )
    sp.add_argument(
        "--speed", required=True,
        help="speed field: constant | sin-ratio | inv-uniform | file:PATH",
    )
    sp.add_argument(
        "--speed-param", action="append", default=[], metavar="K=V",
        help="speed parameter, repeatable (e.g. c=1, r=4, seed=7, u_floor=0.05)",
    )
    sp.add_argument(
        "--boundary", required=True,
        help="zero-value grid indices 'i,j[;i,j...]'",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fastmarch",
        description="2-D eikonal solver with exact and untidy bucket queues",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one march and dump the solution grid")
    _add_problem_flags(solve)
    solve.add_argument("--queue", choices=["exact", "untidy"], default="exact")
    solve.add_argument("--buckets", type=int, default=None,
                       help="bucket count (required iff --queue untidy)")
    solve.add_argument("--out", required=True)
    solve.add_argument("--format", choices=["csv", "raw"], default="csv")
    solve.set_defaults(func=cmd_solve)

    oracle = sub.add_parser("oracle", help="solve by iterative sweeping instead")
    _add_problem_flags(oracle)
    oracle.add_argument("--tol", type=float, default=1e-14)
    oracle.add_argument("--out", required=True)
    oracle.add_argument("--format", choices=["csv", "raw"], default="csv")
    oracle.set_defaults(func=cmd_oracle)

    ver = sub.add_parser(
        "verify",
        help="run oracle-equivalence, band-width, and error-bound checks",
    )
    _add_problem_flags(ver)
    ver.add_argument("--buckets", type=int, required=True)
    ver.add_argument("--tol", type=float, default=1e-12,
                     help="oracle equivalence tolerance")
    ver.set_defaults(func=cmd_verify)

    fig1 = sub.add_parser("fig1", help="error-vs-ratio study (CSV + figure)")
    fig1.add_argument("--out", default="fig1.csv")
    fig1.add_argument("--n", type=int, default=experiments.DEFAULT_ERROR_STUDY_N)
    fig1.add_argument("--ratios",
                      default=",".join(str(r) for r in experiments.DEFAULT_RATIOS))
    fig1.add_argument("--buckets",
                      default=",".join(str(b) for b in experiments.DEFAULT_BUCKET_COUNTS))
    fig1.add_argument("--no-figure", action="store_true",
                      help="skip the rendered figure, write CSV only")
    fig1.set_defaults(func=cmd_fig1)

    fig2 = sub.add_parser("fig2", help="work and wall-time scaling study (CSV + figure)")
    fig2.add_argument("--out", default="fig2.csv")
    fig2.add_argument("--sizes",
                      default=",".join(str(n) for n in experiments.DEFAULT_SCALING_SIZES))
    fig2.add_argument("--seed", type=int, default=0)
    fig2.add_argument("--u-floor", type=float, default=experiments.DEFAULT_U_FLOOR)
    fig2.add_argument("--no-figure", action="store_true",
                      help="skip the rendered figure, write CSV only")
    fig2.set_defaults(func=cmd_fig2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except verify.VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except KeyboardInterrupt:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def console_main() -> None:
    sys.exit(main())
