"""Brute-force baseline archive: flat storage, one linear scan per update."""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from .archive import DOMINATED, Archive, ProcessOutcome


class ArrayArchive(Archive):
    """Flat contiguous archive with an O(n m) scan per processed point.

    The scan walks the points in storage order and stops at the first stored
    point that weakly dominates the candidate.  A stored point dominated by
    the candidate is overwritten with the last point, which is then removed,
    and the scan re-examines the swapped-in point at the same index.  The
    implementation batches the scan with numpy but reproduces the scalar
    semantics exactly: outcomes, final storage order and comparison counts
    all match the element-by-element loop.
    """

    def __init__(self, m: int) -> None:
        super().__init__(m)
        self._rows = np.empty((16, m), dtype=np.float64)
        self._payloads: list[Any] = []
        self._n = 0

    def __len__(self) -> int:
        return self._n

    def process(self, point: Sequence[float], payload: Any = None) -> ProcessOutcome:
        y = self._require_vector(point)
        n = self._n
        removed = 0
        if n:
            rows = self._rows[:n]
            weakly_dominating = (rows <= y).all(axis=1)
            if weakly_dominating.any():
                # early exit at the first dominating point, before any removal
                self._comparisons += int(np.argmax(weakly_dominating)) + 1
                return DOMINATED
            self._comparisons += n
            strictly_dominated = (rows >= y).all(axis=1)
            removed = int(np.count_nonzero(strictly_dominated))
            if removed:
                self._remove_masked(strictly_dominated)
        self._append(y, payload)
        return ProcessOutcome(inserted=True, removed=removed)

    def _remove_masked(self, mask: np.ndarray) -> None:
        # Swap-with-last removal, batched: each dominated slot below the final
        # boundary receives the highest-index surviving row not yet consumed,
        # which is exactly where the scalar scan would have left it.
        holes = np.flatnonzero(mask)
        survivors = np.flatnonzero(~mask)
        new_n = self._n - holes.size
        rows = self._rows
        payloads = self._payloads
        t = survivors.size - 1
        for h in holes:
            if h >= new_n:
                break
            src = survivors[t]
            t -= 1
            rows[h] = rows[src]
            payloads[h] = payloads[src]
        del payloads[new_n:]
        self._n = new_n

    def _append(self, y: np.ndarray, payload: Any) -> None:
        if self._n == self._rows.shape[0]:
            grown = np.empty((2 * self._rows.shape[0], self._m), dtype=np.float64)
            grown[: self._n] = self._rows[: self._n]
            self._rows = grown
        self._rows[self._n] = y
        self._payloads.append(payload)
        self._n += 1

    def export_points(self) -> list[tuple[float, ...]]:
        return [tuple(map(float, row)) for row in self._rows[: self._n]]

    def export_entries(self) -> list[tuple[tuple[float, ...], Any]]:
        return [
            (tuple(map(float, self._rows[i])), self._payloads[i]) for i in range(self._n)
        ]
