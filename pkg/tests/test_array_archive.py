import numpy as np
import pytest

from ndarchive import ArrayArchive, ProcessOutcome
from ndarchive.oracle import non_dominated_subset, sequential_outcomes

DOM = ProcessOutcome(inserted=False)


def ins(removed=0):
    return ProcessOutcome(inserted=True, removed=removed)


def test_empty_archive_insert():
    archive = ArrayArchive(3)
    assert len(archive) == 0
    assert archive.export_points() == []
    assert archive.process((1, 2, 3)) == ins(0)
    assert len(archive) == 1


def test_equal_point_is_dominated():
    archive = ArrayArchive(3)
    archive.process((5, 5, 5))
    assert archive.process((5, 5, 5)) == DOM
    assert len(archive) == 1


def test_strict_domination_rejects():
    archive = ArrayArchive(3)
    archive.process((0, 0, 0))
    assert archive.process((1, 1, 1)) == DOM


def test_double_removal():
    archive = ArrayArchive(2)
    archive.process((1, 0))
    archive.process((0, 1))
    assert archive.process((0, 0)) == ins(2)
    assert len(archive) == 1
    assert archive.export_points() == [(0.0, 0.0)]


def test_comparisons_count_exactly_archive_size():
    archive = ArrayArchive(2)
    # mutually incomparable chain on the anti-diagonal
    for i in range(8):
        archive.process((i, -i))
    before = archive.counters().point_comparisons
    assert archive.process((8.5, -8.5)) == ins(0)
    assert archive.counters().point_comparisons - before == 8
    assert archive.counters().nodes_visited == 0
    assert archive.counters().rebalances == 0


def test_dominated_early_exit_counts_examined_points_only():
    archive = ArrayArchive(2)
    archive.process((10, -10))  # incomparable to the candidate below
    archive.process((0, 0))  # dominates it
    archive.process((-5, 5))  # never examined
    before = archive.counters().point_comparisons
    assert archive.process((1, 1)) == DOM
    assert archive.counters().point_comparisons - before == 2


def test_improving_sequence_keeps_only_best():
    archive = ArrayArchive(2)
    outcomes = [archive.process(p) for p in [(3, 3), (2, 2), (1, 1)]]
    assert outcomes == [ins(0), ins(1), ins(1)]
    assert archive.export_points() == [(1.0, 1.0)]


def test_payloads_follow_points():
    archive = ArrayArchive(2)
    archive.process((1, 0), payload="a")
    archive.process((0, 1), payload="b")
    archive.process((0, 0), payload="winner")
    assert archive.export_entries() == [((0.0, 0.0), "winner")]


def _scalar_reference(points_then_candidate):
    """Element-by-element model of the spec'd scan, including final order."""
    *stored, y = [tuple(map(float, p)) for p in points_then_candidate]
    front = list(stored)
    comparisons = 0
    i = 0
    size = len(front)
    while i < size:
        comparisons += 1
        p = front[i]
        if all(pj <= yj for pj, yj in zip(p, y)):
            return front[:size], None, comparisons
        if all(yj <= pj for yj, pj in zip(y, p)):
            size -= 1
            front[i] = front[size]
        else:
            i += 1
    front = front[:size] + [y]
    return front, len(stored) - size, comparisons


def test_matches_scalar_scan_semantics_exactly():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = int(rng.integers(2, 4))
        k = int(rng.integers(1, 30))
        seed_points = rng.integers(0, 5, size=(k, m)).astype(float)
        candidate = rng.integers(0, 5, size=m).astype(float)
        archive = ArrayArchive(m)
        stored = []
        for p in seed_points:
            if archive.process(p).inserted:
                pass
            stored = archive.export_points()  # storage order
        expected_front, expected_removed, expected_comparisons = _scalar_reference(stored + [tuple(candidate)])
        before = archive.counters().point_comparisons
        outcome = archive.process(candidate)
        assert archive.counters().point_comparisons - before == expected_comparisons
        if expected_removed is None:
            assert outcome == DOM
            assert archive.export_points() == expected_front
        else:
            assert outcome == ins(expected_removed)
            assert archive.export_points() == expected_front


def test_differential_against_oracle():
    rng = np.random.default_rng(11)
    for _ in range(25):
        m = int(rng.integers(2, 6))
        pts = rng.integers(0, 6, size=(int(rng.integers(1, 250)), m)).astype(float)
        archive = ArrayArchive(m)
        outcomes = [archive.process(p) for p in pts]
        assert outcomes == sequential_outcomes(pts)
        assert set(archive.export_points()) == non_dominated_subset(pts)


def test_input_validation():
    archive = ArrayArchive(3)
    with pytest.raises(ValueError):
        archive.process((1, 2))
    with pytest.raises(ValueError):
        archive.process((1, 2, float("nan")))
    with pytest.raises(ValueError):
        ArrayArchive(1)
