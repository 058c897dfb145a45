"""Command-line benchmark harness.

Subcommands: ``generate`` synthetic workloads, ``run`` archives over a file
or a freshly generated sequence, ``sweep`` parameter grids, ``exponent``
scaling fits over sweep output, and ``replay`` external traces.  Exit codes:
0 success, 2 usage error, 1 runtime or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict

import numpy as np

from . import bench, pointio
from .analysis import fit_exponent
from .datagen import SequenceSpec, generate


class UsageError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


def _parse_int_list(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(token) for token in text.split(",")]


def _parse_float_list(text: str) -> list[float]:
    return [float(token) for token in text.split(",")]


def _add_generator_flags(parser: argparse.ArgumentParser, require: bool) -> None:
    parser.add_argument("--m", type=int, required=require, help="number of objectives (>= 2)")
    parser.add_argument(
        "--nondominated", type=int, required=require, help="count of points drawn on the zero-sum hyperplane"
    )
    parser.add_argument("--dominated", type=int, default=0, help="count of shifted points (default 0)")
    parser.add_argument("--shift", type=float, default=1.0, help="offset scale of the shifted points (default 1)")
    parser.add_argument("--c", type=float, default=1.0, help="front-loading bias of shifted points (>= 1, default 1)")
    parser.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")


def _add_archive_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--archive", choices=("array", "bi", "bsp", "all"), default="all", help="archive backend(s) to run"
    )
    parser.add_argument("--bucket", type=int, default=20, help="bsp leaf bucket capacity (default 20)")
    parser.add_argument("--z", type=float, default=6.0, help="bsp rebalance ratio threshold (default 6)")
    parser.add_argument("--rebalance", choices=("on", "off"), default="on", help="bsp rebalancing (default on)")


def _build_spec(args: argparse.Namespace) -> SequenceSpec:
    try:
        return SequenceSpec(
            m=args.m,
            nondominated=args.nondominated,
            dominated=args.dominated,
            shift=args.shift,
            bias=args.c,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _run_selection(points: np.ndarray, args: argparse.Namespace, c=None, d=None, seed=None):
    m = int(points.shape[1]) if points.size else 0
    kinds = bench.kinds_for(args.archive, m)
    pairs = []
    for kind in kinds:
        pairs.append(
            bench.run_archive(
                kind,
                points,
                bucket_capacity=args.bucket,
                rebalance_ratio=args.z,
                rebalance_enabled=args.rebalance == "on",
                c=c,
                d=d,
                seed=seed,
            )
        )
    return pairs


def cmd_generate(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    pointio.write_points(args.out, generate(spec))
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    if args.path is not None:
        if args.m is not None or args.nondominated is not None:
            raise UsageError("give either an input file or generator flags, not both")
        points = pointio.read_points(args.path)
        c = d = seed = None
    else:
        if args.m is None or args.nondominated is None:
            raise UsageError("run needs an input file or at least --m and --nondominated")
        spec = _build_spec(args)
        points = generate(spec)
        c, d, seed = spec.bias, spec.shift, spec.seed
    pairs = _run_selection(points, args, c=c, d=d, seed=seed)
    bench.write_results(sys.stdout, [result for result, _ in pairs])
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    points = pointio.read_points(args.path)
    pairs = _run_selection(points, args)
    bench.write_results(sys.stdout, [result for result, _ in pairs])
    if args.export_front is not None:
        archive = next((a for _, a in pairs if a is not None), None)
        front = archive.export_points() if archive is not None else []
        pointio.write_points(args.export_front, front)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if any(m < 2 for m in args.m):
        raise UsageError("every m must be >= 2")
    if args.archive == "bi" and any(m != 2 for m in args.m):
        raise UsageError("--archive bi requires every m to be 2")
    if any(v < 0 for v in args.log2_n) or (args.log2_nondominated and any(v < 0 for v in args.log2_nondominated)):
        raise UsageError("log2 sizes must be >= 0")
    if args.repeat < 1:
        raise UsageError("--repeat must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if any(c < 1.0 for c in args.c):
        raise UsageError("every c must be >= 1")
    cells = bench.sweep_cells(
        args.m,
        args.log2_n,
        args.log2_nondominated,
        args.c,
        args.shift,
        args.repeat,
        args.archive,
        bucket_capacity=args.bucket,
        rebalance_ratio=args.z,
        rebalance_enabled=args.rebalance == "on",
    )
    if not cells:
        raise UsageError("the sweep grid is empty")
    results = bench.run_sweep(cells, jobs=args.jobs)
    if args.out is not None:
        with open(args.out, "w", encoding="ascii") as fh:
            bench.write_results(fh, results)
    else:
        bench.write_results(sys.stdout, results)
    if args.figure is not None:
        from .figures import render_sweep_figure

        render_sweep_figure(results, args.figure, args.cost_column)
    return 0


def cmd_exponent(args: argparse.Namespace) -> int:
    results = [r for r in bench.read_results(args.path) if r.n_total > 0]
    by_kind: dict[str, list[bench.BenchResult]] = defaultdict(list)
    for result in results:
        by_kind[result.archive_kind].append(result)
    if not by_kind:
        raise UsageError(f"no usable result rows in {args.path}")
    fits = {}
    for kind, rows in sorted(by_kind.items()):
        if len(rows) < 2:
            raise UsageError(f"archive {kind!r} has {len(rows)} result row(s); need at least 2")
        try:
            fits[kind] = fit_exponent([(r.n_total, r.cost_per_point(args.cost_column)) for r in rows])
        except ValueError as exc:
            raise UsageError(f"archive {kind!r}: {exc}") from None
    for kind in sorted(fits):
        fit = fits[kind]
        print(
            f"kind={kind} cost={args.cost_column} exponent={fit.exponent:.6f} "
            f"residual={fit.residual:.6f} samples={len(by_kind[kind])}"
        )
    if args.figure is not None:
        from .figures import render_exponent_figure

        render_exponent_figure(results, fits, args.figure, args.cost_column)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndarchive",
        description="Benchmark harness for online non-dominated archives.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a synthetic point sequence to a CSV file")
    _add_generator_flags(p_gen, require=True)
    p_gen.add_argument("--out", required=True, help="output CSV path")
    p_gen.set_defaults(handler=cmd_generate)

    p_run = sub.add_parser("run", help="process a sequence through archives and report measurements")
    p_run.add_argument("path", nargs="?", default=None, help="input point CSV (omit to generate)")
    _add_generator_flags(p_run, require=False)
    _add_archive_flags(p_run)
    p_run.set_defaults(handler=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid and emit result rows")
    p_sweep.add_argument("--m", type=_parse_int_list, required=True, help="objective counts, e.g. 3 or 3,5,10")
    p_sweep.add_argument(
        "--log2-n", type=_parse_int_list, required=True, help="log2 of total points, e.g. 10..16 or 8,10,12"
    )
    p_sweep.add_argument(
        "--log2-nondominated",
        type=_parse_int_list,
        default=None,
        help="log2 of the non-dominated counts (default: equal to --log2-n, i.e. no dominated points)",
    )
    p_sweep.add_argument("--c", type=_parse_float_list, default=[1.0], help="bias values, e.g. 1.0,1.1")
    p_sweep.add_argument("--shift", type=float, default=1.0)
    p_sweep.add_argument("--repeat", type=int, default=1, help="seeds 0..repeat-1 per cell")
    _add_archive_flags(p_sweep)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_sweep.add_argument("--out", default=None, help="result CSV path (default: stdout)")
    p_sweep.add_argument(
        "--cost-column", choices=bench.COST_COLUMNS, default="comparisons", help="cost measure for --figure"
    )
    p_sweep.add_argument("--figure", default=None, help="also render a log-log cost figure to this file")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_exp = sub.add_parser("exponent", help="fit scaling exponents to sweep results")
    p_exp.add_argument("path", help="result CSV produced by sweep or run")
    p_exp.add_argument(
        "--cost-column", choices=bench.COST_COLUMNS, default="comparisons", help="cost measure to fit"
    )
    p_exp.add_argument("--figure", default=None, help="also render samples plus fitted lines to this file")
    p_exp.set_defaults(handler=cmd_exponent)

    p_replay = sub.add_parser("replay", help="replay an externally produced trace")
    p_replay.add_argument("path", help="input point CSV")
    _add_archive_flags(p_replay)
    p_replay.add_argument("--export-front", default=None, help="write the final non-dominated set to this file")
    p_replay.set_defaults(handler=cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
