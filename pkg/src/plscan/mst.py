"""Minimum spanning forest of the mutual reachability graph.

``build_mst`` runs Boruvka rounds over a space tree: every point searches
for its cheapest edge into another component, candidates are reduced per
component and the winners merged. Equal-weight edges are ordered by their
(min endpoint, max endpoint) pair, so the edge list is identical across
runs and thread counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _trees
from .spatial import CoreDistances, PointSet, SpatialIndex, build_index


@dataclass(frozen=True)
class SpanningForest:
    """Weighted edge list of a spanning forest over ``n`` points.

    Edges are stored as parallel arrays ``u``, ``v``, ``weight`` with
    ``u < v``; weights are mutual reachability distances.
    """

    u: np.ndarray
    v: np.ndarray
    weight: np.ndarray
    n: int

    @property
    def n_edges(self) -> int:
        return len(self.weight)

    @property
    def n_components(self) -> int:
        return self.n - self.n_edges

    def total_weight(self) -> float:
        return float(self.weight.sum())


def build_mst(
    data: PointSet,
    cores: CoreDistances,
    index: SpatialIndex | None = None,
    leaf_capacity: int = 32,
    kind: str = "auto",
) -> SpanningForest:
    """Exact mutual-reachability MST via Boruvka over a space tree."""
    if index is None:
        index = build_index(data, leaf_capacity=leaf_capacity, kind=kind)
    n = index.n
    if len(cores.values) != n:
        raise ValueError("core distances do not match the point set")
    internal_core = cores.internal_values
    if internal_core is None:
        internal_core = cores.values
    internal_core = np.ascontiguousarray(internal_core, dtype=np.float64)

    perm, start, end, left, right, bmin, bmax, center, radius = index._tree
    coords = index._coords
    uf_parent = np.arange(n, dtype=np.int64)
    uf_size = np.ones(n, dtype=np.int64)
    comp_of = np.empty(n, dtype=np.int64)
    node_comp = np.empty(len(start), dtype=np.int64)
    cand_w = np.empty(n, dtype=np.float64)
    cand_j = np.empty(n, dtype=np.int64)
    best_w = np.empty(n, dtype=np.float64)
    best_a = np.empty(n, dtype=np.int64)
    best_b = np.empty(n, dtype=np.int64)
    edges_u = np.empty(n - 1, dtype=np.int64)
    edges_v = np.empty(n - 1, dtype=np.int64)
    edges_w = np.empty(n - 1, dtype=np.float64)

    n_edges = 0
    while n_edges < n - 1:
        _trees.refresh_components(uf_parent, comp_of)
        _trees.update_node_components(perm, start, end, left, right, comp_of, node_comp)
        _trees.boruvka_candidates(
            coords, perm, start, end, left, right, bmin, bmax, center, radius,
            index._tree_kind, internal_core, comp_of, node_comp, cand_w, cand_j,
        )
        new_total = _trees.boruvka_merge(
            cand_w, cand_j, uf_parent, uf_size, comp_of,
            best_w, best_a, best_b,
            edges_u, edges_v, edges_w, n_edges,
        )
        if new_total == n_edges:  # complete graph: should never stall
            raise RuntimeError("Boruvka made no progress; input may be degenerate")
        n_edges = new_total

    u = edges_u[:n_edges].copy()
    v = edges_v[:n_edges].copy()
    # Report weights in the output metric, recomputed directly as
    # max(core_u, core_v, dist) so no unit conversion residue remains.
    diffs = coords[u] - coords[v]
    acc = np.zeros(len(u), dtype=np.float64)
    for t in range(coords.shape[1]):
        acc += diffs[:, t] * diffs[:, t]
    dist = np.sqrt(acc)
    if index.data.metric == "cosine":
        dist = dist * dist / 2.0
    weight = np.maximum(np.maximum(cores.values[u], cores.values[v]), dist)
    return SpanningForest(u=u, v=v, weight=weight, n=n)


def from_precomputed(edges, n: int) -> SpanningForest:
    """Accept a precomputed forest-shaped edge list verbatim.

    ``edges`` is an iterable of (u, v, weight) triples with 0-based vertex
    ids below ``n``; weights are taken as mutual reachability distances
    already. Cycles and duplicate edges are rejected.
    """
    rows = list(edges)
    u = np.array([int(r[0]) for r in rows], dtype=np.int64)
    v = np.array([int(r[1]) for r in rows], dtype=np.int64)
    w = np.array([float(r[2]) for r in rows], dtype=np.float64)
    if len(rows) and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
        raise ValueError(f"edge endpoints must be in [0, {n})")
    if (u == v).any():
        raise ValueError("self loops are not allowed")
    if (w < 0).any() or not np.isfinite(w).all():
        raise ValueError("edge weights must be finite and non-negative")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    seen = set()
    for a, b in zip(lo.tolist(), hi.tolist()):
        if (a, b) in seen:
            raise ValueError(f"duplicate edge ({a}, {b})")
        seen.add((a, b))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(lo.tolist(), hi.tolist()):
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ValueError(f"edge ({a}, {b}) closes a cycle; input must be a forest")
        parent[ra] = rb
    return SpanningForest(u=lo, v=hi, weight=w, n=n)


def component_labels(forest: SpanningForest) -> np.ndarray:
    """Connected-component id per point (smallest member index)."""
    parent = np.arange(forest.n)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(forest.u.tolist(), forest.v.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return np.array([find(i) for i in range(forest.n)], dtype=np.int64)
