"""Benchmark harness: run archives over point sequences and record costs.

Costs are reported both as wall time (monotonic clock around the processing
loop only) and as the deterministic archive counters; tests assert on the
counters, humans read the wall time.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .archive import Archive
from .array_archive import ArrayArchive
from .biobjective import BiobjectiveArchive
from .bsp import BspArchive, BspConfig
from .datagen import SequenceSpec, generate

ARCHIVE_KINDS = ("array", "bi", "bsp")
COST_COLUMNS = ("comparisons", "nodes", "time")


def make_archive(
    kind: str,
    m: int,
    *,
    bucket_capacity: int = 20,
    rebalance_ratio: float = 6.0,
    rebalance_enabled: bool = True,
) -> Archive:
    if kind == "array":
        return ArrayArchive(m)
    if kind == "bi":
        if m != 2:
            raise ValueError(f"bi-objective archive requires m=2, got m={m}")
        return BiobjectiveArchive()
    if kind == "bsp":
        config = BspConfig(
            bucket_capacity=bucket_capacity,
            rebalance_ratio=rebalance_ratio,
            rebalance_enabled=rebalance_enabled,
        )
        return BspArchive(m, config)
    raise ValueError(f"unknown archive kind {kind!r}")


def kinds_for(selection: str, m: int) -> list[str]:
    """Expand the --archive flag value; 'all' skips 'bi' unless m is 2."""
    if selection == "all":
        return [k for k in ARCHIVE_KINDS if k != "bi" or m == 2]
    if selection in ARCHIVE_KINDS:
        return [selection]
    raise ValueError(f"unknown archive selection {selection!r}")


@dataclass(frozen=True)
class BenchResult:
    """One archive's measurements over one point sequence.

    ``c``, ``d`` and ``seed`` echo the generator parameters and are None for
    replayed external traces.
    """

    archive_kind: str
    m: int
    n_total: int
    n_nondominated_final: int
    c: float | None
    d: float | None
    seed: int | None
    bucket_capacity: int
    z: float
    mean_ns_per_point: float
    total_point_comparisons: int
    total_nodes_visited: int
    rebalances: int

    def __post_init__(self) -> None:
        if self.n_nondominated_final > self.n_total:
            raise ValueError("final archive cannot exceed the number of processed points")

    def cost_per_point(self, column: str) -> float:
        if column == "comparisons":
            return self.total_point_comparisons / self.n_total
        if column == "nodes":
            return self.total_nodes_visited / self.n_total
        if column == "time":
            return self.mean_ns_per_point
        raise ValueError(f"unknown cost column {column!r}")


def run_archive(
    kind: str,
    points: np.ndarray,
    *,
    bucket_capacity: int = 20,
    rebalance_ratio: float = 6.0,
    rebalance_enabled: bool = True,
    c: float | None = None,
    d: float | None = None,
    seed: int | None = None,
) -> tuple[BenchResult, Archive | None]:
    """Process ``points`` in order through one archive and measure it.

    The wall clock runs around the processing loop only.  Returns the result
    row plus the archive instance (None for an empty input, where no archive
    is constructed).
    """
    n_total = int(points.shape[0]) if points.size else 0
    if n_total == 0:
        result = BenchResult(
            archive_kind=kind,
            m=0,
            n_total=0,
            n_nondominated_final=0,
            c=c,
            d=d,
            seed=seed,
            bucket_capacity=bucket_capacity,
            z=rebalance_ratio,
            mean_ns_per_point=0.0,
            total_point_comparisons=0,
            total_nodes_visited=0,
            rebalances=0,
        )
        return result, None
    m = int(points.shape[1])
    archive = make_archive(
        kind,
        m,
        bucket_capacity=bucket_capacity,
        rebalance_ratio=rebalance_ratio,
        rebalance_enabled=rebalance_enabled,
    )
    process = archive.process
    start = time.perf_counter_ns()
    for i in range(n_total):
        process(points[i])
    elapsed = time.perf_counter_ns() - start
    counters = archive.counters()
    result = BenchResult(
        archive_kind=kind,
        m=m,
        n_total=n_total,
        n_nondominated_final=len(archive),
        c=c,
        d=d,
        seed=seed,
        bucket_capacity=bucket_capacity,
        z=rebalance_ratio,
        mean_ns_per_point=elapsed / n_total,
        total_point_comparisons=counters.point_comparisons,
        total_nodes_visited=counters.nodes_visited,
        rebalances=counters.rebalances,
    )
    return result, archive


# -- result CSV ---------------------------------------------------------------

RESULT_FIELDS = (
    "archive_kind",
    "m",
    "n_total",
    "n_nondominated_final",
    "c",
    "d",
    "seed",
    "bucket_capacity",
    "z",
    "mean_ns_per_point",
    "total_point_comparisons",
    "total_nodes_visited",
    "rebalances",
)

_INT_FIELDS = {
    "m",
    "n_total",
    "n_nondominated_final",
    "bucket_capacity",
    "total_point_comparisons",
    "total_nodes_visited",
    "rebalances",
}
_OPTIONAL_FIELDS = {"c", "d", "seed"}


def result_to_row(result: BenchResult) -> str:
    cells = []
    for name in RESULT_FIELDS:
        value = getattr(result, name)
        if value is None:
            cells.append("")
        elif isinstance(value, float):
            cells.append(repr(value))
        else:
            cells.append(str(value))
    return ",".join(cells)


def result_from_row(row: str) -> BenchResult:
    cells = row.split(",")
    if len(cells) != len(RESULT_FIELDS):
        raise ValueError(f"result row has {len(cells)} cells, expected {len(RESULT_FIELDS)}")
    kwargs = {}
    for name, cell in zip(RESULT_FIELDS, cells):
        if name == "archive_kind":
            kwargs[name] = cell
        elif cell == "" and name in _OPTIONAL_FIELDS:
            kwargs[name] = None
        elif name in _INT_FIELDS or name == "seed":
            kwargs[name] = int(cell)
        else:
            kwargs[name] = float(cell)
    return BenchResult(**kwargs)


def write_results(fh: IO[str], results: Iterable[BenchResult]) -> None:
    fh.write(",".join(RESULT_FIELDS) + "\n")
    for result in results:
        fh.write(result_to_row(result) + "\n")


def read_results(path: str | os.PathLike) -> list[BenchResult]:
    results = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text == ",".join(RESULT_FIELDS):
                continue
            try:
                results.append(result_from_row(text))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return results


# -- parameter sweeps ----------------------------------------------------------


@dataclass(frozen=True)
class SweepCell:
    """One grid point of a sweep: a sequence spec plus the archives to run on it."""

    m: int
    n_total: int
    n_nondominated: int
    c: float
    shift: float
    seed: int
    kinds: tuple[str, ...]
    bucket_capacity: int
    rebalance_ratio: float
    rebalance_enabled: bool


def sweep_cells(
    ms: Sequence[int],
    log2_ns: Sequence[int],
    log2_nondominated: Sequence[int] | None,
    cs: Sequence[float],
    shift: float,
    repeats: int,
    archive_selection: str,
    *,
    bucket_capacity: int = 20,
    rebalance_ratio: float = 6.0,
    rebalance_enabled: bool = True,
) -> list[SweepCell]:
    """Expand grid flags into cells in deterministic order.

    ``log2_nondominated`` defaults to pairing each total with itself (no
    intended-dominated points); explicit values are crossed with the totals
    and combinations exceeding the total are skipped.
    """
    cells = []
    for m, log2_n, c, seed in itertools.product(ms, log2_ns, cs, range(repeats)):
        n_values = log2_nondominated if log2_nondominated is not None else [log2_n]
        for log2_nd in n_values:
            if log2_nd > log2_n:
                continue
            cells.append(
                SweepCell(
                    m=m,
                    n_total=2**log2_n,
                    n_nondominated=2**log2_nd,
                    c=c,
                    shift=shift,
                    seed=seed,
                    kinds=tuple(kinds_for(archive_selection, m)),
                    bucket_capacity=bucket_capacity,
                    rebalance_ratio=rebalance_ratio,
                    rebalance_enabled=rebalance_enabled,
                )
            )
    return cells


def run_cell(cell: SweepCell) -> list[BenchResult]:
    """Generate one sequence and run every archive kind of the cell on it."""
    spec = SequenceSpec(
        m=cell.m,
        nondominated=cell.n_nondominated,
        dominated=cell.n_total - cell.n_nondominated,
        shift=cell.shift,
        bias=cell.c,
        seed=cell.seed,
    )
    points = generate(spec)
    results = []
    for kind in cell.kinds:
        result, _ = run_archive(
            kind,
            points,
            bucket_capacity=cell.bucket_capacity,
            rebalance_ratio=cell.rebalance_ratio,
            rebalance_enabled=cell.rebalance_enabled,
            c=cell.c,
            d=cell.shift,
            seed=cell.seed,
        )
        results.append(result)
    return results


def run_sweep(cells: Sequence[SweepCell], jobs: int = 1) -> list[BenchResult]:
    """Run all cells, optionally across processes; rows come back in grid order."""
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_cell = list(pool.map(run_cell, cells))
    else:
        per_cell = [run_cell(cell) for cell in cells]
    return [result for results in per_cell for result in results]
