"""Flat cluster extraction from the leaf tree.

A clustering is a straight size cut: the leaf clusters alive at the cut
become the clusters, every point inherits the label of its nearest
selected ancestor segment, and membership probabilities scale each point's
join distance into the selected segment's distance range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .condense import CondensedTree
from .leaf_tree import LeafTree, alive_at_breakpoint
from .persistence import PersistenceTrace


@dataclass(frozen=True)
class Clustering:
    """Labels (-1 = noise), probabilities in [0, 1], and the cut used."""

    labels: np.ndarray
    probabilities: np.ndarray
    cut: float
    selected_segments: np.ndarray

    @property
    def n_clusters(self) -> int:
        return len(self.selected_segments)

    def noise_fraction(self) -> float:
        return float((self.labels < 0).mean()) if len(self.labels) else 0.0


def _segment_labels(tree: LeafTree, selected: np.ndarray) -> np.ndarray:
    """Cluster label per segment via sequential parent inheritance.

    Valid because cluster labels were assigned in distance-descending
    write order, so every segment's parent has a smaller index.
    """
    labels = np.empty(tree.n_segments, dtype=np.int64)
    labels[0] = -1
    label = 0
    for idx in range(1, tree.n_segments):
        if label < len(selected) and selected[label] == idx:
            labels[idx] = label
            label += 1
        else:
            labels[idx] = labels[tree.parent[idx]]
    return labels


def _apply_segment_labels(
    tree: LeafTree, condensed: CondensedTree, selected: np.ndarray,
    segment_labels: np.ndarray, cut: float,
) -> Clustering:
    n = condensed.n
    labels = np.full(n, -1, dtype=np.int64)
    probabilities = np.zeros(n, dtype=np.float64)

    pr = condensed.point_rows()
    points = condensed.child[pr]
    point_labels = segment_labels[condensed.parent[pr] - n]
    labels[points] = point_labels

    member = point_labels >= 0
    if member.any():
        seg = selected[point_labels[member]]
        d_max = tree.d_max[seg]
        denom = d_max - tree.d_min[seg]
        num = d_max - condensed.distance[pr][member]
        with np.errstate(divide="ignore", invalid="ignore"):
            prob = np.where(denom > 0, num / np.where(denom > 0, denom, 1.0), 1.0)
        probabilities[points[member]] = np.clip(prob, 0.0, 1.0)

    return Clustering(
        labels=labels, probabilities=probabilities, cut=float(cut),
        selected_segments=np.asarray(selected, dtype=np.int64),
    )


def extract_layer(
    cut: float, tree: LeafTree, condensed: CondensedTree
) -> Clustering:
    """Flat clustering at an arbitrary cut threshold."""
    selected = alive_at_breakpoint(tree, cut)
    segment_labels = _segment_labels(tree, selected)
    return _apply_segment_labels(tree, condensed, selected, segment_labels, cut)


def select_clusters(
    trace: PersistenceTrace, tree: LeafTree, condensed: CondensedTree
) -> Clustering:
    """Clustering at the trace's highest-persistence cut.

    Ties go to the smallest cut. When no segment is ever a leaf the result
    is an all-noise clustering with no selected segments.
    """
    if len(trace.breakpoints) == 0:
        return _apply_segment_labels(
            tree, condensed, np.empty(0, dtype=np.int64),
            _segment_labels(tree, np.empty(0, dtype=np.int64)), 0.0,
        )
    cut = trace.breakpoints[int(np.argmax(trace.totals))]
    return extract_layer(float(cut), tree, condensed)
