"""Brute-force ground truth for non-dominated filtering.

Deliberately quadratic and structurally unrelated to the archive backends:
differential tests compare every backend against these functions, so they
must not share scan logic with any of them.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .archive import ProcessOutcome


def _as_matrix(points: Iterable[Sequence[float]]) -> np.ndarray:
    rows = [tuple(float(v) for v in p) for p in points]
    if not rows:
        return np.empty((0, 0), dtype=np.float64)
    m = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != m:
            raise ValueError(f"point {i} has dimension {len(row)}, expected {m}")
    return np.asarray(rows, dtype=np.float64)


def non_dominated_subset(points: Iterable[Sequence[float]]) -> set[tuple[float, ...]]:
    """Every input point no other input strictly dominates, duplicates collapsed.

    A point q strictly dominates p when q <= p coordinate-wise and q != p.
    Exact duplicates count as one point, matching the archives'
    one-point-per-objective-vector rule.
    """
    matrix = _as_matrix(points)
    if matrix.size == 0:
        return set()
    candidates = np.unique(matrix, axis=0)
    survivors: set[tuple[float, ...]] = set()
    for i in range(candidates.shape[0]):
        p = candidates[i]
        dominators = (candidates <= p).all(axis=1) & (candidates < p).any(axis=1)
        if not dominators.any():
            survivors.add(tuple(map(float, p)))
    return survivors


def sequential_outcomes(points: Iterable[Sequence[float]]) -> list[ProcessOutcome]:
    """Reference per-step outcomes of processing ``points`` in order.

    Re-scans a flat copy of the current non-dominated set at every step; no
    data structure, no early exits, just the contract: a candidate weakly
    dominated by a kept point is rejected, otherwise it is kept and every
    kept point it strictly dominates is dropped.
    """
    matrix = _as_matrix(points)
    outcomes: list[ProcessOutcome] = []
    if matrix.size == 0:
        return outcomes
    front = np.empty((0, matrix.shape[1]), dtype=np.float64)
    for i in range(matrix.shape[0]):
        y = matrix[i]
        if front.shape[0] and (front <= y).all(axis=1).any():
            outcomes.append(ProcessOutcome(inserted=False))
            continue
        if front.shape[0]:
            dominated = (front >= y).all(axis=1)
            removed = int(np.count_nonzero(dominated))
            if removed:
                front = front[~dominated]
        else:
            removed = 0
        front = np.vstack((front, y[None, :]))
        outcomes.append(ProcessOutcome(inserted=True, removed=removed))
    return outcomes
