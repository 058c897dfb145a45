import math

import numpy as np
import pytest

from ndarchive import BspArchive, BspConfig, ProcessOutcome, choose_split
from ndarchive._kernels import _scan_bucket_py, scan_bucket
from ndarchive.oracle import non_dominated_subset, sequential_outcomes

DOM = ProcessOutcome(inserted=False)


def ins(removed=0):
    return ProcessOutcome(inserted=True, removed=removed)


def small_config(bucket=2, z=6.0, enabled=True):
    return BspConfig(
        bucket_capacity=bucket,
        rebalance_ratio=z,
        rebalance_min_subtree=4 * bucket,
        rebalance_enabled=enabled,
    )


def count_leaves(archive):
    total = 0
    stack = [archive._root]
    while stack:
        node = stack.pop()
        if node.leaf:
            total += 1
        else:
            stack.extend((node.left, node.right))
    return total


def test_config_validation_and_defaults():
    assert BspConfig().bucket_capacity == 20
    assert BspConfig().rebalance_ratio == 6.0
    assert BspConfig(bucket_capacity=5).resolved_min_subtree == 20
    assert BspConfig(rebalance_min_subtree=7).resolved_min_subtree == 7
    with pytest.raises(ValueError):
        BspConfig(bucket_capacity=0)
    with pytest.raises(ValueError):
        BspConfig(rebalance_ratio=1.0)


def test_insert_split_kill_dominate_sequence():
    archive = BspArchive(3, small_config(bucket=2))
    for p in [(-1, 0, 1), (1, 0, -1), (0, -1, 1)]:
        assert archive.process(p) == ins(0)
    assert len(archive) == 3
    assert not archive._root.leaf  # the third insert forced a leaf split
    archive.validate_structure()

    assert archive.process((-2, -2, -2)) == ins(3)
    assert len(archive) == 1
    assert archive.process((0, 0, 0)) == DOM
    assert len(archive) == 1
    archive.validate_structure()


def test_nodes_visited_on_nonempty_archive():
    archive = BspArchive(3)
    archive.process((0, 0, 0))
    before = archive.counters().nodes_visited
    archive.process((1, 1, 1))
    assert archive.counters().nodes_visited > before


def test_choose_split_prefers_unused_objective():
    points = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 1.0, 1.0],
            [2.0, 2.0, 2.0],
        ]
    )
    # parent split objective 1, grandparent 0, objective 2 never used
    j, _ = choose_split(points, ancestor_objectives=[1, 0])
    assert j == 2


def test_choose_split_balances_with_left_preference():
    points = np.array([[v, 0.0] for v in (1.0, 2.0, 3.0, 4.0, 5.0)])
    j, theta = choose_split(points, ancestor_objectives=[])
    assert j == 0
    assert theta == 3.5  # 3 points left, 2 right beats 2|3 on the tie


def test_choose_split_single_gap():
    points = np.array([[v, 0.0] for v in (1.0, 1.0, 1.0, 9.0)])
    j, theta = choose_split(points, ancestor_objectives=[])
    assert j == 0
    assert theta == 5.0


def test_choose_split_skips_constant_objectives():
    points = np.array([[7.0, 0.0], [7.0, 1.0]])
    j, _ = choose_split(points, ancestor_objectives=[])
    assert j == 1


def test_choose_split_adjacent_floats_keep_both_sides_nonempty():
    lo = 1.0
    hi = np.nextafter(1.0, 2.0)
    points = np.array([[lo, 0.0], [hi, 1.0]])
    j, theta = choose_split(points, ancestor_objectives=[1])
    assert j == 0
    assert lo < theta <= hi
    assert ((points[:, 0] < theta).sum(), (points[:, 0] >= theta).sum()) == (1, 1)


def _manual_two_leaf_tree(archive, left_points, right_points, j, theta):
    root = archive._root
    left = archive._new_leaf()
    right = archive._new_leaf()
    for leaf, pts in ((left, left_points), (right, right_points)):
        for i, p in enumerate(pts):
            leaf.points[i] = p
        leaf.count = len(pts)
        leaf.payloads = [None] * len(pts)
    root.leaf = False
    root.split_objective = j
    root.threshold = theta
    root.left = left
    root.right = right
    root.count = left.count + right.count
    root.points = None
    root.payloads = None
    return root


def test_rebalance_trigger_arithmetic():
    # 13/2 = 6.5 > 6 triggers, 12/2 = 6 does not (strict threshold)
    for left_size, expected in ((13, 1), (12, 0)):
        archive = BspArchive(2, BspConfig(bucket_capacity=20, rebalance_ratio=6.0, rebalance_min_subtree=4))
        left = [(-i, i) for i in range(1, left_size + 1)]
        right = [(i, -i) for i in range(1, 3)]
        root = _manual_two_leaf_tree(archive, left, right, j=0, theta=0.0)
        before = set(archive.export_points())
        archive._maybe_rebalance([root])
        assert archive.counters().rebalances == expected
        assert set(archive.export_points()) == before
        archive.validate_structure()


def test_rebalance_preserves_set_and_fires_once_per_call():
    config_on = BspConfig(bucket_capacity=2, rebalance_ratio=2.0, rebalance_min_subtree=8)
    config_off = BspConfig(bucket_capacity=2, rebalance_enabled=False)
    on = BspArchive(2, config_on)
    off = BspArchive(2, config_off)
    last = 0
    for i in range(300):  # drifting, mutually non-dominated
        point = (float(i), float(-i))
        on.process(point)
        off.process(point)
        now = on.counters().rebalances
        assert now - last <= 1
        last = now
        assert set(on.export_points()) == set(off.export_points())
    assert on.counters().rebalances > 0
    on.validate_structure()
    off.validate_structure()


def test_wholesale_right_subtree_deletion():
    archive = BspArchive(3, BspConfig(bucket_capacity=20))
    left = [(10, 10, 0), (11, 9, 1)]
    right = [(9, 11, 6), (8, 12, 7)]
    root = _manual_two_leaf_tree(archive, left, right, j=2, theta=5.0)
    y = np.array([0.0, 0.0, 4.0])
    # context: y already known better in objectives 0 and 1
    removed, dominated = archive._check(root, y, 0b011, 0)
    assert (removed, dominated) == (2, False)
    assert root.leaf  # collapsed onto the surviving left child
    assert set(archive.export_points()) == {(10.0, 10.0, 0.0), (11.0, 9.0, 1.0)}


def test_left_descent_after_wholesale_deletion_cleans_left_cell():
    # the left cell holds a point dominated by y even though the wholesale
    # deletion condition fired for the right cell
    archive = BspArchive(3, BspConfig(bucket_capacity=20))
    left = [(10, 10, 4.5), (11, 9, 1)]
    right = [(9, 11, 6), (8, 12, 7)]
    root = _manual_two_leaf_tree(archive, left, right, j=2, theta=5.0)
    y = np.array([0.0, 0.0, 4.0])
    removed, dominated = archive._check(root, y, 0b011, 0)
    assert (removed, dominated) == (3, False)
    assert set(archive.export_points()) == {(11.0, 9.0, 1.0)}


def test_dominated_candidate_short_circuits_into_dominating_cell():
    archive = BspArchive(2, BspConfig(bucket_capacity=20))
    left = [(-5.0, 1.0)]
    right = [(1.0, -1.0)]
    root = _manual_two_leaf_tree(archive, left, right, j=0, theta=0.0)
    before = archive.counters().point_comparisons
    # worse than the left cell in both objectives: dominated without any scan
    removed, dominated = archive._check(root, np.array([3.0, 2.0]), 0, 0b10)
    assert (removed, dominated) == (0, True)
    assert archive.counters().point_comparisons == before


def test_dominated_outcome_never_mutates():
    rng = np.random.default_rng(17)
    pts = rng.integers(0, 5, size=(300, 3)).astype(float)
    archive = BspArchive(3, small_config(bucket=2))
    for p in pts:
        before_size = len(archive)
        outcome = archive.process(p)
        if not outcome.inserted:
            assert len(archive) == before_size
    archive.validate_structure()
    assert set(archive.export_points()) == non_dominated_subset(pts)


def test_payloads_survive_partial_and_wholesale_removal():
    archive = BspArchive(3, small_config(bucket=1))
    points = [(-1, 0, 1), (1, 0, -1), (0, -1, 1), (4, 4, -5)]
    for i, p in enumerate(points):
        archive.process(p, payload=f"p{i}")
    assert dict(archive.export_entries()) == {
        (-1.0, 0.0, 1.0): "p0",
        (1.0, 0.0, -1.0): "p1",
        (0.0, -1.0, 1.0): "p2",
        (4.0, 4.0, -5.0): "p3",
    }
    archive.process((-2, -2, -2), payload="killer")  # dominates p0..p2, not p3
    assert dict(archive.export_entries()) == {
        (-2.0, -2.0, -2.0): "killer",
        (4.0, 4.0, -5.0): "p3",
    }
    archive.validate_structure()


def test_structure_fuzz_with_ties_and_duplicates():
    rng = np.random.default_rng(29)
    for bucket in (1, 2, 5):
        for z in (2.0, 6.0):
            config = BspConfig(bucket_capacity=bucket, rebalance_ratio=z, rebalance_min_subtree=4 * bucket)
            archive = BspArchive(3, config)
            pts = rng.integers(0, 5, size=(400, 3)).astype(float)
            for p in pts:
                archive.process(p)
                archive.validate_structure()
            assert set(archive.export_points()) == non_dominated_subset(pts)


def test_differential_against_oracle_various_dimensions():
    rng = np.random.default_rng(31)
    for m in (2, 3, 5, 10):
        for enabled in (True, False):
            pts = rng.standard_normal((400, m))
            archive = BspArchive(m, small_config(bucket=3, enabled=enabled))
            outcomes = [archive.process(p) for p in pts]
            assert outcomes == sequential_outcomes(pts)
            assert set(archive.export_points()) == non_dominated_subset(pts)
            archive.validate_structure()


def test_deterministic_replay():
    rng = np.random.default_rng(37)
    pts = rng.standard_normal((500, 3))
    runs = []
    for _ in range(2):
        archive = BspArchive(3, small_config(bucket=2))
        runs.append(([archive.process(p) for p in pts], archive.export_points()))
    assert runs[0] == runs[1]


def test_emptied_tree_collapses_to_empty_leaf_and_recovers():
    archive = BspArchive(2, small_config(bucket=1))
    for i in range(8):
        archive.process((float(i), float(-i)))
    assert archive.process((-10.0, -10.0)) == ins(8)
    assert len(archive) == 1
    archive.validate_structure()
    assert archive.process((-11.0, -9.0)) == ins(0)
    assert len(archive) == 2


def test_scan_kernel_matches_python_reference():
    rng = np.random.default_rng(41)
    for _ in range(300):
        m = int(rng.integers(2, 6))
        count = int(rng.integers(0, 12))
        bucket_a = rng.integers(0, 4, size=(16, m)).astype(float)
        bucket_b = bucket_a.copy()
        y = rng.integers(0, 4, size=m).astype(float)
        out_a = np.empty(16, dtype=np.int64)
        out_b = np.empty(16, dtype=np.int64)
        res_a = scan_bucket(bucket_a, count, y, out_a)
        res_b = _scan_bucket_py(bucket_b, count, y, out_b)
        assert res_a == res_b
        assert np.array_equal(bucket_a, bucket_b)
        n_removed = res_a[2]
        assert np.array_equal(out_a[:n_removed], out_b[:n_removed])


def test_pruning_skips_most_of_large_archive():
    # mutually non-dominated points by construction (zero coordinate sums)
    rng = np.random.default_rng(43)
    n = 2**15
    g = rng.standard_normal((n + 256, 3))
    pts = g - g.mean(axis=1, keepdims=True)
    archive = BspArchive(3)
    for p in pts[:n]:
        archive.process(p)
    assert len(archive) == n
    leaves = count_leaves(archive)
    before = archive.counters().nodes_visited
    for p in pts[n:]:
        archive.process(p)
    per_call = (archive.counters().nodes_visited - before) / 256
    assert per_call < 0.25 * leaves


def test_counters_monotone():
    rng = np.random.default_rng(47)
    archive = BspArchive(3, small_config(bucket=2))
    previous = archive.counters()
    for p in rng.standard_normal((200, 3)):
        archive.process(p)
        current = archive.counters()
        assert current.point_comparisons >= previous.point_comparisons
        assert current.nodes_visited >= previous.nodes_visited
        assert current.rebalances >= previous.rebalances
        previous = current
