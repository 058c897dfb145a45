"""Specialized archive for two objectives with O(log n) amortized updates.

The front of a bi-objective archive is totally ordered: sorting the stored
points by the first objective automatically sorts them in descending order of
the second.  Updates therefore reduce to predecessor/successor queries on a
self-balancing search tree keyed by the first objective: the predecessor
decides dominance of the candidate in a single point comparison, and the
points dominated by the candidate form one contiguous run starting at the
successor.
"""

from __future__ import annotations

from typing import Any, Sequence

from .archive import DOMINATED, Archive, ProcessOutcome


class _AvlNode:
    __slots__ = ("x", "y", "payload", "left", "right", "height")

    def __init__(self, x: float, y: float, payload: Any) -> None:
        self.x = x
        self.y = y
        self.payload = payload
        self.left: _AvlNode | None = None
        self.right: _AvlNode | None = None
        self.height = 1


def _height(node: _AvlNode | None) -> int:
    return node.height if node is not None else 0


class BiobjectiveArchive(Archive):
    """AVL-backed archive over points with exactly two objectives.

    Stored keys (first objectives) are unique: a candidate sharing a stored
    point's first objective either is weakly dominated by it or strictly
    dominates it, so the tie is resolved before insertion ever happens.
    Every removal deletes the current successor of the candidate's key, so
    removal cost stays logarithmic per removed point and amortizes to one
    removal per insertion.
    """

    def __init__(self) -> None:
        super().__init__(2)
        self._root: _AvlNode | None = None
        self._count = 0

    def __len__(self) -> int:
        return self._count

    # -- ordered-structure queries ------------------------------------------------

    def _floor(self, x: float) -> _AvlNode | None:
        """Rightmost stored node with first objective <= x."""
        node = self._root
        best = None
        while node is not None:
            self._nodes_visited += 1
            if node.x <= x:
                best = node
                node = node.right
            else:
                node = node.left
        return best

    def _ceiling(self, x: float) -> _AvlNode | None:
        """Leftmost stored node with first objective >= x."""
        node = self._root
        best = None
        while node is not None:
            self._nodes_visited += 1
            if node.x >= x:
                best = node
                node = node.left
            else:
                node = node.right
        return best

    def neighbor_indices(self, point: Sequence[float]) -> tuple[tuple[float, float] | None, tuple[float, float] | None]:
        """Potential left and right neighbors of ``point`` on the front.

        Returns the stored point with the largest first objective <= the
        candidate's, and the one with the smallest first objective >= it;
        either is None when no stored point qualifies.  Ties are admitted on
        both sides, so the same stored point can be returned twice.
        """
        y = self._require_vector(point)
        lo = self._floor(float(y[0]))
        hi = self._ceiling(float(y[0]))
        return (
            (lo.x, lo.y) if lo is not None else None,
            (hi.x, hi.y) if hi is not None else None,
        )

    # -- AVL maintenance ------------------------------------------------------------

    def _rebalance_node(self, node: _AvlNode) -> _AvlNode:
        node.height = 1 + max(_height(node.left), _height(node.right))
        balance = _height(node.left) - _height(node.right)
        if balance > 1:
            assert node.left is not None
            if _height(node.left.left) < _height(node.left.right):
                node.left = self._rotate_left(node.left)
            return self._rotate_right(node)
        if balance < -1:
            assert node.right is not None
            if _height(node.right.right) < _height(node.right.left):
                node.right = self._rotate_right(node.right)
            return self._rotate_left(node)
        return node

    def _rotate_right(self, node: _AvlNode) -> _AvlNode:
        pivot = node.left
        assert pivot is not None
        node.left = pivot.right
        pivot.right = node
        node.height = 1 + max(_height(node.left), _height(node.right))
        pivot.height = 1 + max(_height(pivot.left), _height(pivot.right))
        self._rebalances += 1
        return pivot

    def _rotate_left(self, node: _AvlNode) -> _AvlNode:
        pivot = node.right
        assert pivot is not None
        node.right = pivot.left
        pivot.left = node
        node.height = 1 + max(_height(node.left), _height(node.right))
        pivot.height = 1 + max(_height(pivot.left), _height(pivot.right))
        self._rebalances += 1
        return pivot

    def _insert(self, node: _AvlNode | None, x: float, y: float, payload: Any) -> _AvlNode:
        if node is None:
            return _AvlNode(x, y, payload)
        self._nodes_visited += 1
        if x < node.x:
            node.left = self._insert(node.left, x, y, payload)
        else:
            node.right = self._insert(node.right, x, y, payload)
        return self._rebalance_node(node)

    def _delete(self, node: _AvlNode | None, x: float) -> _AvlNode | None:
        if node is None:
            return None
        self._nodes_visited += 1
        if x < node.x:
            node.left = self._delete(node.left, x)
        elif x > node.x:
            node.right = self._delete(node.right, x)
        else:
            if node.left is None:
                return node.right
            if node.right is None:
                return node.left
            successor = node.right
            while successor.left is not None:
                self._nodes_visited += 1
                successor = successor.left
            node.x, node.y, node.payload = successor.x, successor.y, successor.payload
            node.right = self._delete(node.right, successor.x)
        return self._rebalance_node(node)

    # -- archive contract -------------------------------------------------------

    def process(self, point: Sequence[float], payload: Any = None) -> ProcessOutcome:
        y = self._require_vector(point)
        x1, x2 = float(y[0]), float(y[1])
        left = self._floor(x1)
        if left is not None:
            self._comparisons += 1
            if left.y <= x2:
                return DOMINATED
        removed = 0
        while True:
            right = self._ceiling(x1)
            if right is None:
                break
            self._comparisons += 1
            if right.y < x2:
                break
            self._root = self._delete(self._root, right.x)
            self._count -= 1
            removed += 1
        self._root = self._insert(self._root, x1, x2, payload)
        self._count += 1
        return ProcessOutcome(inserted=True, removed=removed)

    def export_points(self) -> list[tuple[float, ...]]:
        return [(x, y) for x, y, _ in self._entries_inorder()]

    def export_entries(self) -> list[tuple[tuple[float, ...], Any]]:
        return [((x, y), payload) for x, y, payload in self._entries_inorder()]

    def _entries_inorder(self) -> list[tuple[float, float, Any]]:
        out: list[tuple[float, float, Any]] = []
        stack: list[_AvlNode] = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append((node.x, node.y, node.payload))
            node = node.right
        return out
