"""Pareto dominance on objective vectors (minimization convention).

All archives in this package are built on the partial order defined here:
``a`` weakly dominates ``b`` when every coordinate of ``a`` is less than or
equal to the corresponding coordinate of ``b``; strict dominance additionally
requires the vectors to differ.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Sequence


class Dominance(Enum):
    """Outcome of comparing two objective vectors."""

    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def ensure_objective_vector(coords: Sequence[float], m: int | None = None) -> tuple[float, ...]:
    """Validate and normalize one objective vector.

    Rejects vectors with fewer than two objectives, non-finite coordinates
    (NaN or infinity would silently corrupt every dominance decision), and,
    when ``m`` is given, any dimension mismatch.
    """
    vec = tuple(float(v) for v in coords)
    if len(vec) < 2:
        raise ValueError(f"objective vector needs at least 2 coordinates, got {len(vec)}")
    if m is not None and len(vec) != m:
        raise ValueError(f"objective vector has dimension {len(vec)}, expected {m}")
    for v in vec:
        if not math.isfinite(v):
            raise ValueError(f"objective vector contains non-finite coordinate {v!r}")
    return vec


def compare(a: Sequence[float], b: Sequence[float]) -> Dominance:
    """Full dominance relation between ``a`` and ``b``.

    Returns ``DOMINATES`` iff ``a`` is coordinate-wise <= ``b`` and differs
    somewhere, ``DOMINATED_BY`` for the mirrored case, ``EQUAL`` for identical
    vectors and ``INCOMPARABLE`` otherwise.  The loop exits as soon as both
    vectors have been seen to win somewhere, since each call is one unit of
    instrumented cost.
    """
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    a_better = False
    b_better = False
    for x, y in zip(a, b):
        if x < y:
            if b_better:
                return Dominance.INCOMPARABLE
            a_better = True
        elif y < x:
            if a_better:
                return Dominance.INCOMPARABLE
            b_better = True
    if a_better:
        return Dominance.DOMINATES
    if b_better:
        return Dominance.DOMINATED_BY
    return Dominance.EQUAL


def weakly_dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` is coordinate-wise <= ``b`` (equality counts)."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))
