"""Figure rendering for benchmark reports.

matplotlib is imported lazily and driven with the Agg backend, so the data
paths of the CLI never touch a display and importing this module stays cheap
unless a figure is actually requested.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .analysis import ScalingFit
from .bench import BenchResult

_COST_LABELS = {
    "comparisons": "point comparisons per processed point",
    "nodes": "nodes visited per processed point",
    "time": "wall time per processed point [ns]",
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _grouped_means(
    results: Sequence[BenchResult], cost_column: str
) -> dict[tuple, list[tuple[int, float]]]:
    """Mean cost per (archive, m, c) group and total point count, seeds averaged."""
    samples: dict[tuple, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in results:
        if r.n_total == 0:
            continue
        key = (r.archive_kind, r.m, r.c)
        samples[key][r.n_total].append(r.cost_per_point(cost_column))
    curves = {}
    for key, by_n in samples.items():
        curve = [(n, sum(costs) / len(costs)) for n, costs in sorted(by_n.items())]
        curves[key] = curve
    return curves


def render_sweep_figure(results: Sequence[BenchResult], path: str, cost_column: str = "comparisons") -> None:
    """Log-log cost curves of a sweep, one line per archive/m/c group."""
    plt = _pyplot()
    curves = _grouped_means(results, cost_column)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for (kind, m, c), curve in sorted(curves.items(), key=str):
        ns = [n for n, _ in curve]
        costs = [cost for _, cost in curve]
        label = f"{kind}, m={m}" + (f", c={c:g}" if c is not None else "")
        ax.plot(ns, costs, marker="o", markersize=3.5, linewidth=1.2, label=label)
    ax.set_xscale("log", base=2)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("processed points n")
    ax.set_ylabel(_COST_LABELS.get(cost_column, cost_column))
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_exponent_figure(
    results: Sequence[BenchResult],
    fits: dict[str, ScalingFit],
    path: str,
    cost_column: str = "comparisons",
) -> None:
    """Scatter of per-point costs with the fitted power law per archive kind."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    by_kind: dict[str, list[tuple[int, float]]] = defaultdict(list)
    for r in results:
        if r.n_total:
            by_kind[r.archive_kind].append((r.n_total, r.cost_per_point(cost_column)))
    for kind in sorted(by_kind):
        pts = sorted(by_kind[kind])
        ns = [n for n, _ in pts]
        costs = [cost for _, cost in pts]
        (line,) = ax.plot(ns, costs, "o", markersize=3.5, label=f"{kind} samples")
        fit = fits.get(kind)
        if fit is not None:
            anchor = costs[0]
            fitted = [anchor * (n / ns[0]) ** fit.exponent for n in ns]
            ax.plot(
                ns,
                fitted,
                "--",
                color=line.get_color(),
                linewidth=1.0,
                label=f"{kind} fit: n^{fit.exponent:.3f}",
            )
    ax.set_xscale("log", base=2)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("processed points n")
    ax.set_ylabel(_COST_LABELS.get(cost_column, cost_column))
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
