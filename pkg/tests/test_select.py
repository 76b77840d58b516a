"""Flat cluster extraction and automatic selection."""

import numpy as np
import pytest

from plscan import (
    build_leaf_tree,
    condense_tree,
    extract_layer,
    fit,
    from_precomputed,
    persistence_trace,
    select_clusters,
    single_linkage,
)

from datasets import CHAIN_A, CHAIN_B, CHAIN_C, blobs, three_chain_forest


@pytest.fixture(scope="module")
def chain_artifacts():
    condensed = condense_tree(single_linkage(three_chain_forest()), 5.0)
    tree = build_leaf_tree(condensed)
    trace = persistence_trace(tree, condensed, "size")
    return condensed, tree, trace


class TestSelectClusters:
    def test_three_chain_selection(self, chain_artifacts):
        condensed, tree, trace = chain_artifacts
        clustering = select_clusters(trace, tree, condensed)
        assert clustering.cut == 5.0
        np.testing.assert_array_equal(clustering.selected_segments, [2, 4, 5])
        assert clustering.n_clusters == 3
        assert set(clustering.labels[CHAIN_A]) == {0}
        assert set(clustering.labels[CHAIN_B]) == {1}
        assert set(clustering.labels[CHAIN_C]) == {2}
        assert clustering.noise_fraction() == 0.0
        # Every chain point joins its segment at the segment's d_min.
        np.testing.assert_array_equal(clustering.probabilities, np.ones(150))

    def test_matches_extract_layer_at_argmax(self, chain_artifacts):
        condensed, tree, trace = chain_artifacts
        auto = select_clusters(trace, tree, condensed)
        manual = extract_layer(5.0, tree, condensed)
        np.testing.assert_array_equal(auto.labels, manual.labels)
        np.testing.assert_array_equal(auto.probabilities, manual.probabilities)

    def test_all_noise_when_no_leaves(self):
        edges = [(i, i + 1, 0.3) for i in range(7)]
        condensed = condense_tree(single_linkage(from_precomputed(edges, 8)), 5.0)
        tree = build_leaf_tree(condensed)
        trace = persistence_trace(tree, condensed, "size")
        clustering = select_clusters(trace, tree, condensed)
        assert clustering.n_clusters == 0
        assert (clustering.labels == -1).all()
        assert (clustering.probabilities == 0.0).all()

    def test_labels_match_selected_segments(self):
        points, _ = blobs(240, 4, seed=3)
        result = fit(points=points, k=4)
        clustering = result.clustering
        present = set(clustering.labels[clustering.labels >= 0].tolist())
        assert present == set(range(clustering.n_clusters))
        # Noise points carry probability zero; members are in (0, 1].
        noise = clustering.labels < 0
        assert (clustering.probabilities[noise] == 0.0).all()
        assert (clustering.probabilities[~noise] > 0.0).all()
        assert (clustering.probabilities <= 1.0).all()


class TestExtractLayer:
    def test_coarser_cut_on_three_chain(self, chain_artifacts):
        condensed, tree, trace = chain_artifacts
        clustering = extract_layer(19.0, tree, condensed)
        np.testing.assert_array_equal(clustering.selected_segments, [2, 3])
        assert set(clustering.labels[CHAIN_A]) == {0}
        assert set(clustering.labels[CHAIN_B + CHAIN_C]) == {1}

    def test_cut_above_root_birth_is_all_noise(self, chain_artifacts):
        condensed, tree, trace = chain_artifacts
        clustering = extract_layer(30.0, tree, condensed)
        assert clustering.n_clusters == 0
        assert (clustering.labels == -1).all()

    def test_cluster_counts_non_increasing_in_cut(self):
        points, _ = blobs(300, 5, seed=29)
        result = fit(points=points, k=4)
        cuts = np.sort(result.layers.cuts)
        counts = [
            extract_layer(float(c), result.tree, result.condensed).n_clusters
            for c in cuts
        ]
        assert all(a >= b for a, b in zip(counts, counts[1:]))

    def test_selected_segments_alive_and_heavy_enough(self):
        from plscan.persistence import _MemberTable

        points, _ = blobs(220, 4, seed=37)
        result = fit(points=points, k=4)
        clustering = result.clustering
        table = _MemberTable(result.condensed)
        for seg in clustering.selected_segments:
            assert result.tree.s_min[seg] <= clustering.cut < result.tree.s_max[seg]
            _, cumw, _ = table.members(int(seg))
            assert cumw[-1] >= clustering.cut

    def test_probabilities_monotone_in_join_distance(self):
        points, _ = blobs(220, 4, seed=37)
        result = fit(points=points, k=4)
        clustering = result.clustering
        condensed = result.condensed
        pr = condensed.point_rows()
        for label in range(clustering.n_clusters):
            member = clustering.labels[condensed.child[pr]] == label
            dists = condensed.distance[pr][member]
            probs = clustering.probabilities[condensed.child[pr][member]]
            order = np.argsort(dists, kind="stable")
            assert (np.diff(probs[order]) <= 1e-12).all()

    def test_sequential_labels_match_reference_walk(self):
        points, _ = blobs(260, 5, seed=43)
        result = fit(points=points, k=4)
        clustering = result.clustering
        condensed = result.condensed
        tree = result.tree
        selected = {int(s): i for i, s in enumerate(clustering.selected_segments)}
        expected = np.full(condensed.n, -1, dtype=np.int64)
        pr = condensed.point_rows()
        for row in pr:
            seg = int(condensed.parent[row]) - condensed.n
            while seg != 0 and seg not in selected:
                seg = int(tree.parent[seg])
            expected[int(condensed.child[row])] = selected.get(seg, -1)
        np.testing.assert_array_equal(clustering.labels, expected)
