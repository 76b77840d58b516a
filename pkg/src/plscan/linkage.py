"""Single-linkage merge tree over a spanning forest.

Edges are replayed in ascending weight order through a union-find. Merge
``t`` creates node ``n + t``; node ids below ``n`` are single points. Both
weighted sizes and point counts are tracked so later stages can prune by
weight while reserving storage by count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mst import SpanningForest


@dataclass(frozen=True)
class LinkageTree:
    """Merge sequence of a single-linkage clustering.

    Row ``t`` merges clusters ``left[t]`` and ``right[t]`` at
    ``distance[t]`` into node ``n + t``; ``left`` is the cluster that
    contained the edge's first endpoint. ``size``/``count`` give the merged
    node's weight sum and point count.
    """

    left: np.ndarray
    right: np.ndarray
    distance: np.ndarray
    size: np.ndarray
    count: np.ndarray
    n: int
    weights: np.ndarray

    @property
    def n_merges(self) -> int:
        return len(self.distance)

    def size_of(self, node: int) -> float:
        """Weighted size of a linkage node (point or merge)."""
        if node < self.n:
            return float(self.weights[node])
        return float(self.size[node - self.n])

    def count_of(self, node: int) -> int:
        if node < self.n:
            return 1
        return int(self.count[node - self.n])


def single_linkage(forest: SpanningForest, sample_weights=None) -> LinkageTree:
    """Replay forest edges in Kruskal order through a union-find."""
    n = forest.n
    if sample_weights is None:
        weights = np.ones(n, dtype=np.float64)
    else:
        weights = np.ascontiguousarray(sample_weights, dtype=np.float64)
        if weights.shape != (n,):
            raise ValueError(f"sample_weights must have shape ({n},)")
        if (weights <= 0).any():
            raise ValueError("sample weights must be positive")

    # Stable sort keeps the forest's deterministic order for equal weights.
    order = np.argsort(forest.weight, kind="stable")
    m = len(order)
    left = np.empty(m, dtype=np.int64)
    right = np.empty(m, dtype=np.int64)
    distance = forest.weight[order].copy()
    size = np.empty(m, dtype=np.float64)
    count = np.empty(m, dtype=np.int64)

    # Union-find over points; cluster_id maps each root to its current node.
    parent = np.arange(n, dtype=np.int64)
    cluster_id = np.arange(n, dtype=np.int64)
    cluster_size = weights.copy()
    cluster_count = np.ones(n, dtype=np.int64)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    us = forest.u[order]
    vs = forest.v[order]
    for t in range(m):
        ru = find(us[t])
        rv = find(vs[t])
        if ru == rv:
            raise ValueError("input edges contain a cycle; expected a forest")
        left[t] = cluster_id[ru]
        right[t] = cluster_id[rv]
        size[t] = cluster_size[ru] + cluster_size[rv]
        count[t] = cluster_count[ru] + cluster_count[rv]
        parent[rv] = ru
        cluster_id[ru] = n + t
        cluster_size[ru] = size[t]
        cluster_count[ru] = count[t]

    return LinkageTree(
        left=left, right=right, distance=distance, size=size, count=count,
        n=n, weights=weights,
    )
