"""Condensed tree construction.

The linkage tree is simplified with a minimum cluster size ``m_c`` in one
pass over the merges in descending distance order. Rather than collecting
pruned branches breadth-first, each accepted merge reserves a row block for
the points its pruned descendants will contribute; those rows are filled in
as the descending pass reaches them. The result is a row list sorted by
non-increasing distance, with sibling cluster rows adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linkage import LinkageTree


@dataclass(frozen=True)
class CondensedTree:
    """Simplified hierarchy rows (parent, child, distance, size).

    ``parent`` ids are cluster labels starting at ``n`` (the phantom root
    representing the whole dataset). ``child`` is a point id below ``n`` or
    a cluster label. ``pair_rows`` holds the first row index of every
    sibling cluster-row pair in write (descending distance) order.
    """

    parent: np.ndarray
    child: np.ndarray
    distance: np.ndarray
    size: np.ndarray
    n: int
    min_cluster_size: float
    pair_rows: np.ndarray
    max_label: int

    @property
    def n_rows(self) -> int:
        return len(self.parent)

    @property
    def n_segments(self) -> int:
        """Number of cluster segments including the phantom root."""
        return self.max_label - self.n + 1

    def point_rows(self) -> np.ndarray:
        return np.flatnonzero(self.child < self.n)


def condense_tree(linkage: LinkageTree, min_cluster_size: float) -> CondensedTree:
    """Prune the linkage tree, keeping clusters of weighted size >= m_c."""
    n = linkage.n
    m_c = float(min_cluster_size)
    weights = linkage.weights
    max_weight = float(weights.max()) if n else 0.0
    if m_c <= max_weight:
        raise ValueError(
            f"min_cluster_size={m_c} must exceed the maximum sample weight {max_weight}"
        )

    m = linkage.n_merges
    left = linkage.left
    right = linkage.right
    ldist = linkage.distance
    lsize = linkage.size
    lcount = linkage.count

    def side_size(node):
        return weights[node] if node < n else lsize[node - n]

    def side_count(node):
        return 1 if node < n else lcount[node - n]

    # A merge is accepted when both sides reach the minimum size; only then
    # does the condensed tree gain a sibling cluster-row pair.
    accepted = np.zeros(m, dtype=bool)
    pruned_counts = np.zeros(m, dtype=np.int64)
    for t in range(m):
        ls = side_size(left[t])
        rs = side_size(right[t])
        accepted[t] = ls >= m_c and rs >= m_c
        if lsize[t] >= m_c:
            total = 0
            if ls < m_c:
                total += side_count(left[t])
            if rs < m_c:
                total += side_count(right[t])
            pruned_counts[t] = total

    n_rows = n + 2 * int(accepted.sum())
    out_parent = np.empty(n_rows, dtype=np.int64)
    out_child = np.empty(n_rows, dtype=np.int64)
    out_dist = np.empty(n_rows, dtype=np.float64)
    out_size = np.empty(n_rows, dtype=np.float64)
    pair_rows = []

    parent_of = np.full(m, n, dtype=np.int64)
    pending_idx = np.full(m, -1, dtype=np.int64)
    pending_distance = np.zeros(m, dtype=np.float64)
    index = 0
    next_label = n
    seen_in_merge = np.zeros(n, dtype=bool)

    for t in range(m - 1, -1, -1):
        if lsize[t] < m_c:
            if pending_idx[t] < 0:
                # A whole component below the threshold: record its points
                # under the phantom root at the component's top distance.
                out_idx = index
                index += lcount[t]
                distance = ldist[t]
            else:
                out_idx = pending_idx[t]
                distance = pending_distance[t]
        else:
            out_idx = index
            index += pruned_counts[t]
            distance = ldist[t]

        p_label = parent_of[t]
        for side in (left[t], right[t]):
            if side < n:
                out_parent[out_idx] = p_label
                out_child[out_idx] = side
                out_dist[out_idx] = distance
                out_size[out_idx] = weights[side]
                out_idx += 1
                seen_in_merge[side] = True
            else:
                c = side - n
                parent_of[c] = p_label
                if lsize[c] < m_c:
                    pending_idx[c] = out_idx
                    pending_distance[c] = distance
                    out_idx += lcount[c]

        if accepted[t]:
            parent = p_label
            if parent == n:
                next_label += 1
                parent = next_label
            # m_c exceeds every sample weight, so both accepted sides are
            # merge nodes and the id shift below n is safe.
            pair_rows.append(index)
            for side in (left[t], right[t]):
                c = side - n
                next_label += 1
                parent_of[c] = next_label
                out_parent[index] = parent
                out_child[index] = next_label
                out_dist[index] = ldist[t]
                out_size[index] = lsize[c]
                index += 1

    # Points that never joined an edge become phantom-root rows at 0.
    for p in np.flatnonzero(~seen_in_merge):
        out_parent[index] = n
        out_child[index] = p
        out_dist[index] = 0.0
        out_size[index] = weights[p]
        index += 1
    if index != n_rows:
        raise AssertionError("condensed tree row accounting is inconsistent")

    pair_left = np.asarray(pair_rows, dtype=np.int64)
    return CondensedTree(
        parent=out_parent, child=out_child, distance=out_dist, size=out_size,
        n=n, min_cluster_size=m_c, pair_rows=pair_left, max_label=next_label,
    )
