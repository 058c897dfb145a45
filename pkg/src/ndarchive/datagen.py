"""Synthetic benchmark sequences: Gaussian points on or above the zero-sum hyperplane.

Unshifted points are standard normal vectors projected onto the hyperplane
orthogonal to the all-ones direction, which makes any two of them mutually
non-dominated (a weakly dominated point with the same coordinate sum would
have to be identical).  Shifted points get an all-ones offset that shrinks
with their position in the sequence, modelling solutions that improve over
time; they are intended to end up dominated but that is a tendency, not a
guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class SequenceSpec:
    """Full parameterization of one synthetic sequence.

    ``nondominated`` points are drawn on the zero-sum hyperplane and
    ``dominated`` points above it, offset by ``shift * total / k`` at 1-based
    sequence position k.  ``bias`` >= 1 front-loads the shifted points: at
    each position a shifted point is drawn with probability
    min(1, bias * remaining_shifted / remaining_total).
    """

    m: int
    nondominated: int
    dominated: int = 0
    shift: float = 1.0
    bias: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if self.nondominated < 0 or self.dominated < 0:
            raise ValueError("point counts cannot be negative")
        if self.nondominated + self.dominated < 1:
            raise ValueError("sequence needs at least one point")
        if self.shift < 0.0:
            raise ValueError(f"shift must be >= 0, got {self.shift}")
        if self.bias < 1.0:
            raise ValueError(f"bias must be >= 1, got {self.bias}")

    @property
    def total(self) -> int:
        return self.nondominated + self.dominated


def center_to_hyperplane(g: np.ndarray) -> np.ndarray:
    """Remove the coordinate mean of each row.

    This projects onto the subspace orthogonal to the all-ones vector and
    realizes the degenerate unit-variance-in-subspace covariance exactly,
    with no factorization of a singular matrix.
    """
    g = np.asarray(g, dtype=np.float64)
    return g - g.mean(axis=-1, keepdims=True)


def generate(spec: SequenceSpec) -> np.ndarray:
    """Sample the sequence described by ``spec``; bit-identical per seed.

    Returns an array of shape (total, m).  Exactly ``spec.nondominated``
    unshifted and ``spec.dominated`` shifted points are emitted regardless of
    ``bias``: the draw probability hits 0 when no shifted points remain and
    1 when no unshifted points do.
    """
    rng = np.random.default_rng(spec.seed)
    total = spec.total
    uniforms = rng.random(total)
    points = center_to_hyperplane(rng.standard_normal((total, spec.m)))
    remaining_shifted = spec.dominated
    remaining_unshifted = spec.nondominated
    for k in range(1, total + 1):
        # uniforms are in [0, 1), so comparing against the unclipped
        # probability clips it at 1 implicitly
        p_shifted = spec.bias * remaining_shifted / (remaining_shifted + remaining_unshifted)
        if uniforms[k - 1] < p_shifted:
            points[k - 1] += spec.shift * total / k
            remaining_shifted -= 1
        else:
            remaining_unshifted -= 1
    return points


def hyperplane_nondominance_check(points: Iterable[Sequence[float]], tol: float = 1e-9) -> bool:
    """True iff all zero-sum points in the input are pairwise non-dominated.

    Points whose coordinate sum deviates from zero by more than ``tol`` are
    excluded before the check.  For exact zero-sum points the property is
    guaranteed: weak dominance plus an equal coordinate sum forces equality.
    """
    matrix = np.asarray(list(points), dtype=np.float64)
    if matrix.size == 0:
        return True
    on_plane = matrix[np.abs(matrix.sum(axis=1)) <= tol]
    for i in range(on_plane.shape[0]):
        p = on_plane[i]
        dominators = (on_plane <= p).all(axis=1) & (on_plane < p).any(axis=1)
        if dominators.any():
            return False
    return True
