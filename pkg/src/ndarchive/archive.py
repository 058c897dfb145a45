"""Shared contract for all archive backends.

An archive holds exactly the mutually non-dominated subset of the points
processed so far.  Every backend implements :meth:`Archive.process` with the
same semantics so differential tests can compare them outcome by outcome, and
exposes deterministic cost counters so complexity claims can be asserted
without wall clocks.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class ProcessOutcome:
    """Result of processing one candidate point.

    ``inserted`` is False when the candidate was weakly dominated by a stored
    point (including an exact duplicate) and the archive was left unchanged;
    otherwise the candidate was stored and ``removed`` counts the previously
    stored points it strictly dominated.
    """

    inserted: bool
    removed: int = 0

    def __post_init__(self) -> None:
        if self.removed < 0:
            raise ValueError("removed count cannot be negative")
        if not self.inserted and self.removed:
            raise ValueError("a dominated candidate cannot remove stored points")

    @property
    def dominated(self) -> bool:
        return not self.inserted


DOMINATED = ProcessOutcome(inserted=False)


@dataclass(frozen=True)
class ArchiveCounters:
    """Cumulative, monotone cost counters of one archive instance.

    ``point_comparisons`` counts pairwise dominance comparisons between the
    candidate and stored points, ``nodes_visited`` counts tree nodes entered
    (always 0 for the flat array backend), ``rebalances`` counts structural
    rebalancing events.
    """

    point_comparisons: int = 0
    nodes_visited: int = 0
    rebalances: int = 0


class Archive(ABC):
    """Online non-dominated archive over vectors of fixed dimension ``m``."""

    def __init__(self, m: int) -> None:
        if m < 2:
            raise ValueError(f"archive dimension must be >= 2, got {m}")
        self._m = int(m)
        self._comparisons = 0
        self._nodes_visited = 0
        self._rebalances = 0

    @property
    def m(self) -> int:
        """Objective count fixed at construction."""
        return self._m

    def _require_vector(self, point: Sequence[float]) -> np.ndarray:
        y = np.asarray(point, dtype=np.float64)
        if y.shape != (self._m,):
            raise ValueError(f"point has shape {y.shape}, expected ({self._m},)")
        if not np.isfinite(y).all():
            raise ValueError("point contains non-finite coordinates")
        return y

    @abstractmethod
    def process(self, point: Sequence[float], payload: Any = None) -> ProcessOutcome:
        """Insert ``point`` unless weakly dominated; drop points it dominates.

        After the call the stored set is exactly the non-dominated subset of
        everything processed so far.  ``payload`` is an opaque tag kept with
        the point; it plays no role in any dominance decision.
        """

    @abstractmethod
    def export_points(self) -> list[tuple[float, ...]]:
        """All stored points, in unspecified order."""

    @abstractmethod
    def export_entries(self) -> list[tuple[tuple[float, ...], Any]]:
        """All stored (point, payload) pairs, in unspecified order."""

    @abstractmethod
    def __len__(self) -> int:
        """Number of stored points."""

    @property
    def size(self) -> int:
        return len(self)

    def counters(self) -> ArchiveCounters:
        """Snapshot of the cumulative cost counters."""
        return ArchiveCounters(
            point_comparisons=self._comparisons,
            nodes_visited=self._nodes_visited,
            rebalances=self._rebalances,
        )

    def process_all(self, points: Iterable[Sequence[float]]) -> list[ProcessOutcome]:
        """Process a whole sequence in order; convenience for tests and replay."""
        return [self.process(p) for p in points]
