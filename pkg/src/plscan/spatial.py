"""Spatial indexing: exact k-nearest neighbours and core distances.

Two tree kinds are available. The k-d tree needs coordinate-separable
bounds and is therefore restricted to euclidean data; the ball tree covers
the cosine metric. Cosine queries run on row-normalised vectors in
euclidean space and distances are converted at the boundary with
``d_cos = d_euc^2 / 2``, which preserves neighbour order exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _trees

METRICS = ("euclidean", "cosine")


@dataclass(frozen=True)
class PointSet:
    """Dense coordinates plus the metric they should be compared under."""

    points: np.ndarray
    metric: str = "euclidean"


@dataclass(frozen=True)
class CoreDistances:
    """Distance from every point to its k-th nearest other point.

    ``internal_values`` carries the same distances in the tree's internal
    euclidean coordinates (identical to ``values`` for euclidean data);
    the MST builder uses them so cosine round-trips never lose a ulp.
    """

    values: np.ndarray
    k: int
    internal_values: np.ndarray | None = None


class SpatialIndex:
    """Immutable space tree over a validated point set."""

    def __init__(self, data, coords, kind, tree):
        self.data = data
        self._coords = coords  # internal euclidean coordinates
        self.kind = kind
        self._tree = tree
        self.n = coords.shape[0]


def validate_points(data: PointSet) -> np.ndarray:
    if data.metric not in METRICS:
        raise ValueError(f"unsupported metric {data.metric!r}; expected one of {METRICS}")
    points = np.ascontiguousarray(data.points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be a 2D array of shape (n, dims)")
    n, dims = points.shape
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if dims < 1:
        raise ValueError("points must have at least one coordinate")
    if not np.isfinite(points).all():
        raise ValueError("points contain non-finite coordinates")
    return points


def build_index(data: PointSet, leaf_capacity: int = 32, kind: str = "auto") -> SpatialIndex:
    """Build a space tree answering exact k-NN queries for ``data.metric``."""
    points = validate_points(data)
    if leaf_capacity < 1:
        raise ValueError("leaf_capacity must be at least 1")
    if kind == "auto":
        kind = "kd" if data.metric == "euclidean" else "ball"
    if kind not in ("kd", "ball"):
        raise ValueError(f"unknown index kind {kind!r}")
    if kind == "kd" and data.metric != "euclidean":
        raise ValueError("the k-d tree only supports the euclidean metric; use the ball tree")
    if data.metric == "cosine":
        norms = np.sqrt((points**2).sum(axis=1))
        if (norms == 0.0).any():
            raise ValueError("cosine metric is undefined for zero vectors")
        coords = points / norms[:, None]
    else:
        coords = points
    tree_kind = _trees.KIND_KD if kind == "kd" else _trees.KIND_BALL
    tree = _trees.build_tree_arrays(coords, leaf_capacity, tree_kind)
    index = SpatialIndex(data, coords, kind, tree)
    index._tree_kind = tree_kind
    return index


def _from_internal(index: SpatialIndex, dists: np.ndarray) -> np.ndarray:
    if index.data.metric == "cosine":
        return dists * dists / 2.0
    return dists


def knn(index: SpatialIndex, k: int):
    """All-points exact k-NN, self excluded.

    Returns ``(distances, indices)`` of shape (n, k), each row sorted by
    ascending (distance, index).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > index.n - 1:
        raise ValueError(f"k={k} must be at most n-1={index.n - 1}")
    perm, start, end, left, right, bmin, bmax, center, radius = index._tree
    dists, inds = _trees.knn_all(
        index._coords, perm, start, end, left, right, bmin, bmax, center, radius,
        index._tree_kind, k,
    )
    return _from_internal(index, dists), inds


def core_distances(index: SpatialIndex, k: int) -> CoreDistances:
    """Distance from each point to its k-th nearest other point."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > index.n - 1:
        raise ValueError(f"k={k} must be at most n-1={index.n - 1}")
    perm, start, end, left, right, bmin, bmax, center, radius = index._tree
    dists, _ = _trees.knn_all(
        index._coords, perm, start, end, left, right, bmin, bmax, center, radius,
        index._tree_kind, k,
    )
    internal = np.ascontiguousarray(dists[:, k - 1])
    return CoreDistances(
        values=_from_internal(index, internal), k=k, internal_values=internal
    )


def mutual_reachability(i: int, j: int, dist: float, cores: CoreDistances) -> float:
    """max(core_i, core_j, dist); symmetric and never below ``dist``."""
    if i == j:
        raise ValueError("mutual reachability is defined for distinct points")
    return max(cores.values[i], cores.values[j], dist)
