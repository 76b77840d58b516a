"""Leaf tree: minimum-cluster-size lifetimes of condensed-tree segments.

For every cluster segment the leaf tree records the size range
``(s_min, s_max]`` in which the segment is a leaf cluster and the distance
range ``[d_min, d_max)`` in which it exists. One pass over the sibling
cluster-row pairs in increasing distance order fills both children's death
sizes and delays each parent's birth until its descendants have died.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .condense import CondensedTree


@dataclass(frozen=True)
class LeafTree:
    """Per-segment lifetimes; index 0 is the phantom root.

    Segment ``i`` corresponds to condensed-tree cluster label ``n + i``.
    Segments with ``s_min >= s_max`` never become leaves; downstream
    consumers filter them out.
    """

    parent: np.ndarray
    d_min: np.ndarray
    d_max: np.ndarray
    s_min: np.ndarray
    s_max: np.ndarray
    initial_min_cluster_size: float

    @property
    def n_segments(self) -> int:
        return len(self.parent)

    def true_leaf_mask(self) -> np.ndarray:
        """Segments that are a leaf cluster for some threshold.

        The phantom root and the per-component top segments are excluded:
        connected components themselves are never selectable clusters.
        """
        idx = np.arange(self.n_segments)
        return (idx >= 1) & (self.parent != 0) & (self.s_min < self.s_max)


@dataclass(frozen=True)
class LeafInterval:
    """A segment's leaf lifetime: thresholds in (birth, death]."""

    segment: int
    birth: float
    death: float


def build_leaf_tree(condensed: CondensedTree) -> LeafTree:
    n = condensed.n
    n_segments = condensed.n_segments
    initial = condensed.min_cluster_size
    total_weight = float(condensed.size[condensed.child < n].sum())

    parent = np.zeros(n_segments, dtype=np.int64)
    s_min = np.full(n_segments, initial, dtype=np.float64)
    s_max = np.zeros(n_segments, dtype=np.float64)
    s_max[0] = total_weight
    top_distance = condensed.distance[0] if condensed.n_rows else 0.0
    d_max = np.full(n_segments, top_distance, dtype=np.float64)
    d_min = np.zeros(n_segments, dtype=np.float64)
    # Rows are sorted by non-increasing distance, so the last write per
    # parent leaves that parent's minimum distance in place.
    d_min[condensed.parent - n] = condensed.distance

    # Pairs were recorded in decreasing distance order; reverse for the
    # children-before-parents sweep.
    for row in condensed.pair_rows[::-1]:
        a = condensed.child[row] - n
        b = condensed.child[row + 1] - n
        parent_idx = condensed.parent[row] - n
        distance = condensed.distance[row]
        death = min(condensed.size[row], condensed.size[row + 1])
        parent[a] = parent_idx
        parent[b] = parent_idx
        d_max[a] = distance
        d_max[b] = distance
        s_max[a] = death
        s_max[b] = death
        s_min[parent_idx] = max(death, s_min[a], s_min[b])
        if parent[parent_idx] == 0:
            s_min[0] = max(s_min[0], s_min[parent_idx])

    # Segments still attached to the phantom root (component tops) die at
    # the largest observed birth size.
    top = (parent == 0) & (np.arange(n_segments) >= 1)
    s_max[top] = s_min[0]
    return LeafTree(
        parent=parent, d_min=d_min, d_max=d_max, s_min=s_min, s_max=s_max,
        initial_min_cluster_size=initial,
    )


def true_leaf_intervals(tree: LeafTree) -> list[LeafInterval]:
    """Leaf lifetimes of all segments that ever become leaves."""
    return [
        LeafInterval(segment=int(i), birth=float(tree.s_min[i]), death=float(tree.s_max[i]))
        for i in np.flatnonzero(tree.true_leaf_mask())
    ]


def leaves_at(tree: LeafTree, min_cluster_size: float) -> np.ndarray:
    """Segments that are leaf clusters at the given threshold.

    A segment is alive for thresholds in ``(s_min, s_max]``. At the
    initial threshold itself nothing has been pruned yet, so the leaves
    are exactly the childless segments (all of which carry
    ``s_min == initial``) rather than segments born mid-sweep.
    """
    m_c = float(min_cluster_size)
    if m_c < tree.initial_min_cluster_size:
        raise ValueError(
            "threshold below the initial minimum cluster size of the condensed tree"
        )
    idx = np.arange(tree.n_segments)
    candidate = (idx >= 1) & (tree.parent != 0)
    if m_c == tree.initial_min_cluster_size:
        has_children = np.zeros(tree.n_segments, dtype=bool)
        if tree.n_segments > 1:
            has_children[tree.parent[1:]] = True
        born = ~has_children
    else:
        born = tree.s_min < m_c
    return np.flatnonzero(candidate & born & (m_c <= tree.s_max))


def alive_at_breakpoint(tree: LeafTree, breakpoint: float) -> np.ndarray:
    """True-leaf segments alive at a trace breakpoint (s_min <= b < s_max)."""
    mask = tree.true_leaf_mask()
    return np.flatnonzero(mask & (tree.s_min <= breakpoint) & (breakpoint < tree.s_max))
