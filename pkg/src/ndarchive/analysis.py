"""Executable forms of the archive's runtime analysis.

Covers the expected number of tree cells comparable to a random candidate
under distinct split objectives (sum and closed form), the depth/order
distribution recursion under uniformly random split objectives, and
least-squares fitting of scaling exponents to empirical cost curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class OrderDistribution:
    """Probability table over (depth, order) for a random tree cell.

    The order of a cell w.r.t. a candidate point is the number of objectives
    in which the candidate lies outside the cell's coordinate range.  Row d
    of ``table`` is the distribution over orders 0..m at depth d.
    """

    m: int
    table: np.ndarray

    @property
    def max_depth(self) -> int:
        return self.table.shape[0] - 1

    def q(self, depth: int, order: int) -> float:
        return float(self.table[depth, order])


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares line in log2-log2 space: cost ~ size**exponent."""

    exponent: float
    residual: float


def q_table(m: int, d_max: int) -> OrderDistribution:
    """Order distribution per depth, assuming uniformly random split objectives.

    Each level halves the mass staying at the same order k (weighted by
    (m+k)/m) and promotes the rest from order k-1 (weighted by (m-k+1)/m).
    Every row must sum to one; a row that does not (beyond floating point
    tolerance) indicates a transcription error and raises instead of being
    renormalized silently.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if d_max < 0:
        raise ValueError(f"d_max must be >= 0, got {d_max}")
    table = np.zeros((d_max + 1, m + 1), dtype=np.float64)
    table[0, 0] = 1.0
    orders = np.arange(1, m + 1, dtype=np.float64)
    from_below = (m - orders + 1.0) / m
    staying = (m + orders) / m
    for d in range(1, d_max + 1):
        prev = table[d - 1]
        table[d, 0] = 0.5 * prev[0]
        table[d, 1:] = 0.5 * (prev[:-1] * from_below + prev[1:] * staying)
        row_sum = float(table[d].sum())
        if abs(row_sum - 1.0) > ROW_SUM_TOL:
            raise ArithmeticError(
                f"order-distribution row does not sum to 1: m={m}, depth={d}, sum={row_sum!r}"
            )
    return OrderDistribution(m=m, table=table)


def expected_comparable_nodes(d: int) -> float:
    """Expected number of depth-d cells comparable to a random candidate.

    Sum form: 1 + sum over k=1..d of 2**(1-k) * C(d, k), valid when no two
    splits on a root-to-leaf path share an objective.  Binomials are built by
    a multiplicative recurrence folded into the running term, so the
    intermediate values stay near the final magnitude.
    """
    if d < 0:
        raise ValueError(f"depth must be >= 0, got {d}")
    total = 1.0
    term = 1.0  # 2**(1-k) * C(d, k), starting from k=0 value 2
    for k in range(1, d + 1):
        term *= (d - k + 1) / k * 0.5
        total += term * 2.0
    return total


def comparable_nodes_closed_form(d: int) -> float:
    """Closed form of :func:`expected_comparable_nodes`: 2**(d*log2(3/2)+1) - 1."""
    if d < 0:
        raise ValueError(f"depth must be >= 0, got {d}")
    return 2.0 ** (d * math.log2(1.5) + 1.0) - 1.0


def binomial_order_probability(d: int, k: int) -> float:
    """Probability of order k at depth d under fair per-level coin flips: 2**-d * C(d,k)."""
    if d < 0 or k < 0:
        raise ValueError("depth and order must be >= 0")
    if k > d:
        return 0.0
    coeff = 1.0
    for i in range(1, k + 1):
        coeff *= (d - i + 1) / i
    return coeff * 2.0**-d


def fit_exponent(samples: Iterable[Sequence[float]]) -> ScalingFit:
    """Slope of the least-squares line through (log2 size, log2 cost).

    Needs at least two samples at distinct sizes; all sizes and costs must be
    positive.  The residual is the root-mean-square error in log2 space.
    """
    pairs = [(float(n), float(t)) for n, t in samples]
    if len(pairs) < 2:
        raise ValueError("need at least 2 samples to fit an exponent")
    sizes = np.array([p[0] for p in pairs])
    costs = np.array([p[1] for p in pairs])
    if (sizes <= 0).any() or (costs <= 0).any():
        raise ValueError("sizes and costs must all be positive")
    if np.unique(sizes).size < 2:
        raise ValueError("need samples at >= 2 distinct sizes")
    x = np.log2(sizes)
    y = np.log2(costs)
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    residual = float(np.sqrt(np.mean((y - fitted) ** 2)))
    return ScalingFit(exponent=float(slope), residual=residual)
