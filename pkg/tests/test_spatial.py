"""Spatial index: exact k-NN, core distances, mutual reachability."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plscan import PointSet, build_index, core_distances, knn, mutual_reachability
from plscan import oracle

from datasets import random_points


def _index(points, metric="euclidean", **kwargs):
    return build_index(PointSet(points=np.asarray(points, float), metric=metric), **kwargs)


class TestBuildIndex:
    def test_two_points_single_neighbour(self):
        index = _index([[0.0, 0.0], [1.0, 0.0]])
        dists, inds = knn(index, 1)
        assert inds[0, 0] == 1 and inds[1, 0] == 0
        assert dists[0, 0] == 1.0 and dists[1, 0] == 1.0

    def test_k_zero_rejected(self):
        index = _index([[0.0], [1.0]])
        with pytest.raises(ValueError):
            knn(index, 0)

    def test_k_at_least_n_rejected(self):
        index = _index([[0.0], [1.0], [2.0]])
        with pytest.raises(ValueError):
            knn(index, 3)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            _index([[0.0, np.nan], [1.0, 0.0]])

    def test_single_point_rejected(self):
        with pytest.raises(ValueError):
            _index([[0.0, 0.0]])

    def test_kd_tree_rejects_cosine(self):
        with pytest.raises(ValueError):
            _index([[1.0, 0.0], [0.0, 1.0]], metric="cosine", kind="kd")

    def test_zero_vector_rejected_for_cosine(self):
        with pytest.raises(ValueError):
            _index([[0.0, 0.0], [1.0, 0.0]], metric="cosine")

    @pytest.mark.parametrize("kind", ["kd", "ball"])
    def test_matches_brute_force(self, kind):
        points = random_points(200, 2, seed=11, scale=5.0)
        index = _index(points, kind=kind)
        dists, inds = knn(index, 5)
        ref_d, ref_i = oracle.brute_knn(points, 5)
        np.testing.assert_array_equal(inds, ref_i)
        np.testing.assert_array_equal(dists, ref_d)

    def test_cosine_matches_brute_force(self):
        points = random_points(150, 4, seed=3) + 2.0
        index = _index(points, metric="cosine")
        dists, inds = knn(index, 6)
        ref_d, ref_i = oracle.brute_knn(points, 6, metric="cosine")
        np.testing.assert_array_equal(inds, ref_i)
        np.testing.assert_allclose(dists, ref_d, rtol=0, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(
        seed=st.integers(0, 10_000),
        n=st.integers(5, 60),
        dims=st.integers(1, 5),
        k=st.integers(1, 4),
        capacity=st.integers(1, 40),
    )
    def test_knn_property_matches_brute(self, seed, n, dims, k, capacity):
        points = random_points(n, dims, seed=seed)
        index = _index(points, leaf_capacity=capacity)
        dists, inds = knn(index, min(k, n - 1))
        ref_d, ref_i = oracle.brute_knn(points, min(k, n - 1))
        np.testing.assert_array_equal(inds, ref_i)
        np.testing.assert_array_equal(dists, ref_d)


class TestCoreDistances:
    def test_collinear_k1(self):
        index = _index([[0.0], [1.0], [3.0]])
        cores = core_distances(index, 1)
        np.testing.assert_array_equal(cores.values, [1.0, 1.0, 2.0])

    def test_collinear_k2(self):
        index = _index([[0.0], [1.0], [3.0]])
        cores = core_distances(index, 2)
        np.testing.assert_array_equal(cores.values, [3.0, 2.0, 3.0])

    def test_matches_brute_force(self):
        points = random_points(100, 3, seed=7)
        cores = core_distances(_index(points), 4)
        np.testing.assert_array_equal(cores.values, oracle.brute_core_distances(points, 4))

    def test_monotone_in_k(self):
        points = random_points(80, 2, seed=5)
        index = _index(points)
        previous = core_distances(index, 1).values
        for k in range(2, 10):
            current = core_distances(index, k).values
            assert (current >= previous).all()
            previous = current

    def test_k_bounds(self):
        index = _index([[0.0], [1.0], [2.0]])
        with pytest.raises(ValueError):
            core_distances(index, 0)
        with pytest.raises(ValueError):
            core_distances(index, 3)


class TestMutualReachability:
    def test_distance_dominates(self):
        cores = core_distances(_index([[0.0], [1.0], [3.0]]), 1)
        cores = cores.__class__(values=np.array([3.0, 4.0, 0.0]), k=1)
        assert mutual_reachability(0, 1, 5.0, cores) == 5.0

    def test_core_dominates(self):
        cores = core_distances(_index([[0.0], [1.0], [3.0]]), 1)
        cores = cores.__class__(values=np.array([3.0, 4.0, 0.0]), k=1)
        assert mutual_reachability(0, 1, 2.0, cores) == 4.0

    def test_same_point_rejected(self):
        cores = core_distances(_index([[0.0], [1.0]]), 1)
        with pytest.raises(ValueError):
            mutual_reachability(0, 0, 1.0, cores)

    @settings(max_examples=30, deadline=None)
    @given(
        c0=st.floats(0, 10), c1=st.floats(0, 10), d=st.floats(0, 10)
    )
    def test_symmetry_and_lower_bounds(self, c0, c1, d):
        from plscan import CoreDistances

        cores = CoreDistances(values=np.array([c0, c1]), k=1)
        forward = mutual_reachability(0, 1, d, cores)
        assert forward == mutual_reachability(1, 0, d, cores)
        assert forward >= d and forward >= c0 and forward >= c1
        assert forward == max(c0, c1, d)
