"""BSP-tree (k-d tree) archive for three or more objectives.

The tree partitions objective space with axis-aligned thresholds; leaves hold
small point buckets.  Processing a candidate performs a recursive dominance
check that tracks, per tree cell, the objectives in which the candidate lies
strictly below or strictly above the cell's coordinate range.  Cells that are
incomparable to the candidate are skipped entirely, cells the candidate
dominates are deleted wholesale without visiting their points, and a cell
found to dominate the candidate ends the check immediately.  Splitting
rotates through objectives (the least recently used splittable objective on
the ancestor chain wins) and a ratio trigger rebuilds grossly unbalanced
subtrees by promoting the heavy child and re-inserting the light child's
points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from ._kernels import scan_bucket
from .archive import DOMINATED, Archive, ProcessOutcome


@dataclass(frozen=True)
class BspConfig:
    """Tuning knobs of the BSP archive.

    ``bucket_capacity`` is the maximum leaf occupancy before a split.
    ``rebalance_ratio`` is the child-count ratio beyond which a subtree is
    rebuilt; ``rebalance_min_subtree`` (default: 4x the bucket capacity)
    exempts small subtrees, whose ratios oscillate too cheaply to matter.
    """

    bucket_capacity: int = 20
    rebalance_ratio: float = 6.0
    rebalance_min_subtree: int | None = None
    rebalance_enabled: bool = True

    def __post_init__(self) -> None:
        if self.bucket_capacity < 1:
            raise ValueError("bucket_capacity must be >= 1")
        if not self.rebalance_ratio > 1.0:
            raise ValueError("rebalance_ratio must be > 1")
        if self.rebalance_min_subtree is not None and self.rebalance_min_subtree < 2:
            raise ValueError("rebalance_min_subtree must be >= 2")

    @property
    def resolved_min_subtree(self) -> int:
        if self.rebalance_min_subtree is not None:
            return self.rebalance_min_subtree
        return 4 * self.bucket_capacity


class _Node:
    """Tree node; a leaf bucket or an interior split, morphing in place.

    ``count`` is always the number of stored points beneath the node.  A
    node is overwritten with one of its children when the other child runs
    empty, so parent references stay valid without parent pointers.
    """

    __slots__ = (
        "leaf",
        "count",
        "split_objective",
        "threshold",
        "left",
        "right",
        "points",
        "payloads",
    )

    def __init__(self) -> None:
        self.leaf = True
        self.count = 0
        self.split_objective = -1
        self.threshold = 0.0
        self.left: _Node | None = None
        self.right: _Node | None = None
        self.points: np.ndarray | None = None
        self.payloads: list[Any] | None = None


def choose_split(points: np.ndarray, ancestor_objectives: Sequence[int]) -> tuple[int, float]:
    """Pick the split objective and threshold for an overfull bucket.

    ``ancestor_objectives`` lists the split objectives on the path from the
    parent upward.  Among objectives with at least two distinct values in the
    bucket, the one whose nearest ancestor split is farthest away wins
    (never-used objectives count as infinitely far; ties go to the lowest
    objective index).  The threshold is the midpoint of two adjacent distinct
    values chosen to balance the strictly-below / at-or-above counts, and a
    tie between equally balanced splits puts the extra point on the left.
    """
    n, m = points.shape
    distance = [math.inf] * m
    for step, j in enumerate(ancestor_objectives, start=1):
        if math.isinf(distance[j]):
            distance[j] = step
    best_j = -1
    best_distance = -math.inf
    for j in range(m):
        if distance[j] > best_distance and np.unique(points[:, j]).size >= 2:
            best_distance = distance[j]
            best_j = j
    if best_j < 0:
        raise RuntimeError("bucket has no splittable objective; stored points should be pairwise distinct")

    column = np.sort(points[:, best_j])
    values = np.unique(column)
    below_or_equal = np.searchsorted(column, values, side="right")
    best_gap = 0
    best_imbalance = n + 1
    for gap in range(values.size - 1):
        left_count = int(below_or_equal[gap])
        imbalance = abs(n - 2 * left_count)
        # ties prefer more points in the left leaf
        if imbalance < best_imbalance or (imbalance == best_imbalance and left_count > int(below_or_equal[best_gap])):
            best_imbalance = imbalance
            best_gap = gap
    low = float(values[best_gap])
    high = float(values[best_gap + 1])
    theta = low + (high - low) / 2.0
    if theta <= low:  # adjacent floats can round the midpoint onto an endpoint
        theta = high
    return best_j, theta


class BspArchive(Archive):
    """Bucketed BSP-tree archive over vectors of dimension ``m`` >= 2."""

    def __init__(self, m: int, config: BspConfig | None = None) -> None:
        super().__init__(m)
        self.config = config if config is not None else BspConfig()
        self._cap = self.config.bucket_capacity
        self._ratio = self.config.rebalance_ratio
        self._min_subtree = self.config.resolved_min_subtree
        self._rebalance_enabled = self.config.rebalance_enabled
        self._full_mask = (1 << m) - 1
        self._removed_buf = np.empty(self._cap + 1, dtype=np.int64)
        self._root = self._new_leaf()

    def __len__(self) -> int:
        return self._root.count

    def _new_leaf(self) -> _Node:
        node = _Node()
        node.points = np.empty((self._cap + 1, self._m), dtype=np.float64)
        node.payloads = []
        return node

    @staticmethod
    def _overwrite(dst: _Node, src: _Node) -> None:
        dst.leaf = src.leaf
        dst.count = src.count
        dst.split_objective = src.split_objective
        dst.threshold = src.threshold
        dst.left = src.left
        dst.right = src.right
        dst.points = src.points
        dst.payloads = src.payloads

    # -- dominance check ---------------------------------------------------------

    def _check(self, node: _Node, y: np.ndarray, better: int, worse: int) -> tuple[int, bool]:
        """Remove everything under ``node`` strictly dominated by ``y``.

        ``better``/``worse`` are bitmasks of the objectives in which ``y``
        lies strictly below/above the node's cell.  Returns the number of
        points removed beneath the node and whether some stored point weakly
        dominates ``y``.  Subtree counts are decremented and one-sided empty
        nodes collapsed on the way out, including when the check ends early
        on a dominated candidate.
        """
        self._nodes_visited += 1
        if node.leaf:
            examined, dominated, n_removed = scan_bucket(node.points, node.count, y, self._removed_buf)
            self._comparisons += examined
            if n_removed:
                size = node.count
                payloads = node.payloads
                buf = self._removed_buf
                for t in range(n_removed):
                    size -= 1
                    payloads[buf[t]] = payloads[size]
                del payloads[size:]
                node.count = size
            return n_removed, dominated

        j = node.split_objective
        bit = 1 << j
        if y[j] < node.threshold:
            better_right = better | bit
            worse_left = worse
        else:
            better_right = better
            worse_left = worse | bit
        if worse_left == self._full_mask:
            # the left cell is non-empty and every point in it dominates y
            return 0, True

        removed = 0
        dominated = False
        if better_right == self._full_mask:
            # y dominates the whole right cell: delete it without visiting it.
            removed += node.right.count
            node.right.count = 0
            # The left cell can still hold dominated points (y is inside its
            # range only in objective j), so it is always descended here.
            if not (better and worse_left):
                sub, dominated = self._check(node.left, y, better, worse_left)
                removed += sub
        else:
            if not (better and worse_left):
                sub, dominated = self._check(node.left, y, better, worse_left)
                removed += sub
            if not dominated and not (better_right and worse):
                sub, dominated = self._check(node.right, y, better_right, worse)
                removed += sub

        node.count -= removed
        left, right = node.left, node.right
        if right.count == 0 and left.count > 0:
            self._overwrite(node, left)
        elif left.count == 0 and right.count > 0:
            self._overwrite(node, right)
        return removed, dominated

    # -- insertion ----------------------------------------------------------------

    def _descend_insert(self, start: _Node, y: np.ndarray, payload: Any, path: list[_Node]) -> list[_Node]:
        """Route ``y`` to its leaf below ``start`` and append it, splitting on overflow.

        ``path`` holds the interior ancestors of ``start`` root-first and is
        extended with every interior node entered; the reached leaf is
        appended too if the overflow split turned it into an interior node.
        """
        node = start
        self._nodes_visited += 1
        while not node.leaf:
            node.count += 1
            path.append(node)
            node = node.left if y[node.split_objective] < node.threshold else node.right
            self._nodes_visited += 1
        node.points[node.count] = y
        node.payloads.append(payload)
        node.count += 1
        if node.count > self._cap:
            self._split_leaf(node, path)
            path.append(node)
        return path

    def _split_leaf(self, node: _Node, path: list[_Node]) -> None:
        points = node.points[: node.count]
        ancestors = [ancestor.split_objective for ancestor in reversed(path)]
        j, theta = choose_split(points, ancestors)
        goes_left = points[:, j] < theta

        left = self._new_leaf()
        right = self._new_leaf()
        left.count = int(np.count_nonzero(goes_left))
        right.count = node.count - left.count
        left.points[: left.count] = points[goes_left]
        right.points[: right.count] = points[~goes_left]
        payloads = node.payloads
        left.payloads = [payloads[i] for i in range(node.count) if goes_left[i]]
        right.payloads = [payloads[i] for i in range(node.count) if not goes_left[i]]

        node.leaf = False
        node.split_objective = j
        node.threshold = theta
        node.left = left
        node.right = right
        node.points = None
        node.payloads = None

    # -- rebalancing ----------------------------------------------------------------

    def _maybe_rebalance(self, path: list[_Node]) -> None:
        # Deepest eligible node first; at most one rebuild per processed point.
        for i in range(len(path) - 1, -1, -1):
            node = path[i]
            if node.count < self._min_subtree:
                continue
            ln = node.left.count
            rn = node.right.count
            if ln > rn * self._ratio or rn > ln * self._ratio:
                self._rebalance(node, path[:i])
                self._rebalances += 1
                return

    def _rebalance(self, node: _Node, ancestors: list[_Node]) -> None:
        if node.left.count < node.right.count:
            smaller, larger = node.left, node.right
        else:
            smaller, larger = node.right, node.left
        entries: list[tuple[np.ndarray, Any]] = []
        self._collect(smaller, entries)
        self._overwrite(node, larger)
        # Stored points are mutually non-dominated, so re-insertion skips the
        # dominance check and just routes each point to its leaf.
        for row, payload in entries:
            self._descend_insert(node, row, payload, list(ancestors))

    def _collect(self, node: _Node, out: list[tuple[np.ndarray, Any]]) -> None:
        if node.leaf:
            for i in range(node.count):
                out.append((node.points[i].copy(), node.payloads[i]))
        else:
            self._collect(node.left, out)
            self._collect(node.right, out)

    # -- archive contract ---------------------------------------------------------

    def process(self, point: Sequence[float], payload: Any = None) -> ProcessOutcome:
        y = self._require_vector(point)
        root = self._root
        removed = 0
        if root.count:
            removed, dominated = self._check(root, y, 0, 0)
            if dominated:
                return DOMINATED
            if root.count == 0:
                # every stored point was dominated away; start from a fresh leaf
                self._overwrite(root, self._new_leaf())
        path = self._descend_insert(root, y, payload, [])
        if self._rebalance_enabled:
            self._maybe_rebalance(path)
        return ProcessOutcome(inserted=True, removed=removed)

    def export_points(self) -> list[tuple[float, ...]]:
        return [point for point, _ in self.export_entries()]

    def export_entries(self) -> list[tuple[tuple[float, ...], Any]]:
        out: list[tuple[tuple[float, ...], Any]] = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node.leaf:
                for i in range(node.count):
                    out.append((tuple(map(float, node.points[i])), node.payloads[i]))
            else:
                stack.append(node.right)
                stack.append(node.left)
        return out

    # -- test hook -----------------------------------------------------------------

    def validate_structure(self) -> None:
        """Walk the whole tree and assert its structural invariants.

        Checks, for every node: subtree counts match a recount, no interior
        node has an empty or missing child, every point in a left subtree is
        strictly below the split threshold in the split objective and every
        point in a right subtree is at or above it, and leaf occupancy never
        exceeds the bucket capacity.
        """
        root = self._root
        if root.leaf and root.count == 0:
            return

        def walk(node: _Node) -> np.ndarray:
            if node.leaf:
                assert 0 < node.count <= self._cap, f"leaf occupancy {node.count} out of range"
                assert len(node.payloads) == node.count, "payload bookkeeping out of sync"
                return node.points[: node.count]
            assert node.left is not None and node.right is not None, "interior node missing a child"
            left_points = walk(node.left)
            right_points = walk(node.right)
            j, theta = node.split_objective, node.threshold
            assert bool((left_points[:, j] < theta).all()), "left subtree violates split threshold"
            assert bool((right_points[:, j] >= theta).all()), "right subtree violates split threshold"
            assert node.count == left_points.shape[0] + right_points.shape[0], "subtree count mismatch"
            return np.vstack((left_points, right_points))

        walk(root)
