"""Single-linkage merge tree construction."""

import numpy as np
import pytest

from plscan import SpanningForest, from_precomputed, single_linkage

from datasets import random_points, three_chain_forest


def test_single_merge():
    link = single_linkage(from_precomputed([(0, 1, 1.0)], 2))
    assert link.n_merges == 1
    assert link.distance[0] == 1.0
    assert link.size[0] == 2.0
    assert link.count[0] == 2


def test_three_point_chain():
    link = single_linkage(from_precomputed([(0, 1, 1.0), (1, 2, 2.0)], 3))
    np.testing.assert_array_equal(link.distance, [1.0, 2.0])
    np.testing.assert_array_equal(link.size, [2.0, 3.0])
    np.testing.assert_array_equal(link.count, [2, 3])
    # The second merge joins the first merge's node (id n+0 = 3) to point 2.
    assert link.left[1] == 3 and link.right[1] == 2


def test_weighted_sizes():
    link = single_linkage(
        from_precomputed([(0, 1, 1.0), (1, 2, 2.0)], 3),
        sample_weights=np.array([2.0, 1.0, 1.0]),
    )
    np.testing.assert_array_equal(link.size, [3.0, 4.0])
    np.testing.assert_array_equal(link.count, [2, 3])


def test_nonpositive_weight_rejected():
    forest = from_precomputed([(0, 1, 1.0)], 2)
    with pytest.raises(ValueError):
        single_linkage(forest, sample_weights=np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        single_linkage(forest, sample_weights=np.array([1.0, -2.0]))


def test_wrong_weight_shape_rejected():
    forest = from_precomputed([(0, 1, 1.0)], 2)
    with pytest.raises(ValueError):
        single_linkage(forest, sample_weights=np.ones(3))


def test_cycle_rejected():
    forest = SpanningForest(
        u=np.array([0, 1, 0]), v=np.array([1, 2, 2]),
        weight=np.array([1.0, 1.0, 1.0]), n=3,
    )
    with pytest.raises(ValueError, match="cycle"):
        single_linkage(forest)


def test_merge_distances_are_sorted_edge_weights():
    rng = np.random.default_rng(17)
    n = 60
    edges = [(i, i + 1, float(w)) for i, w in zip(range(n - 1), rng.uniform(0, 5, n - 1))]
    link = single_linkage(from_precomputed(edges, n))
    np.testing.assert_array_equal(
        link.distance, np.sort([w for _, _, w in edges])
    )
    assert (np.diff(link.distance) >= 0).all()


def test_multi_component_totals():
    forest = from_precomputed([(0, 1, 1.0), (2, 3, 2.0), (3, 4, 3.0)], 6)
    weights = np.array([1.0, 2.0, 1.0, 1.0, 1.0, 3.0])
    link = single_linkage(forest, sample_weights=weights)
    # Roots: the two top merges plus the untouched point 5.
    merged = set(link.left.tolist()) | set(link.right.tolist())
    roots = [node for node in range(6 + link.n_merges) if node not in merged]
    total = sum(link.size_of(r) for r in roots)
    assert total == weights.sum()
    assert sum(link.count_of(r) for r in roots) == 6


def test_chain_merges_attach_single_points():
    link = single_linkage(three_chain_forest())
    assert link.n_merges == 149
    # Within each equal-weight chain every merge adds exactly one point.
    for t in np.flatnonzero(link.distance < 1.5):
        sides = (link.count_of(int(link.left[t])), link.count_of(int(link.right[t])))
        assert min(sides) == 1


def test_size_of_and_count_of_points():
    link = single_linkage(
        from_precomputed([(0, 1, 1.0)], 2), sample_weights=np.array([2.5, 1.0])
    )
    assert link.size_of(0) == 2.5
    assert link.count_of(0) == 1
    assert link.size_of(2) == 3.5
    assert link.count_of(2) == 2
