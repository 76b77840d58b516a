"""End-to-end pipeline: points or a precomputed forest in, clustering out."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import condense, leaf_tree, linkage, mst, persistence, select, spatial
from .persistence import MEASURES


@dataclass(frozen=True)
class FitResult:
    """All pipeline artifacts of one run."""

    forest: mst.SpanningForest
    linkage: linkage.LinkageTree
    condensed: condense.CondensedTree
    tree: leaf_tree.LeafTree
    trace: persistence.PersistenceTrace
    layers: persistence.LayerSet
    clustering: select.Clustering
    k: int
    min_cluster_size: float
    measure: str

    @property
    def labels(self) -> np.ndarray:
        return self.clustering.labels

    @property
    def probabilities(self) -> np.ndarray:
        return self.clustering.probabilities


def fit(
    points: np.ndarray | None = None,
    metric: str = "euclidean",
    k: int = 4,
    min_cluster_size: float | None = None,
    measure: str = "size",
    sample_weights: np.ndarray | None = None,
    forest: mst.SpanningForest | None = None,
    top_layers: int = 5,
    leaf_capacity: int = 32,
) -> FitResult:
    """Run the full pipeline with automatic cluster size selection.

    Either ``points`` (dense coordinates) or ``forest`` (a precomputed
    mutual reachability spanning forest) must be provided. The initial
    minimum cluster size defaults to ``max(k, 2)``.
    """
    if (points is None) == (forest is None):
        raise ValueError("provide exactly one of points or forest")
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if min_cluster_size is None:
        min_cluster_size = max(float(k), 2.0)

    if forest is None:
        data = spatial.PointSet(points=np.asarray(points, dtype=np.float64), metric=metric)
        index = spatial.build_index(data, leaf_capacity=leaf_capacity)
        cores = spatial.core_distances(index, k)
        forest = mst.build_mst(data, cores, index=index)

    link = linkage.single_linkage(forest, sample_weights)
    condensed = condense.condense_tree(link, min_cluster_size)
    tree = leaf_tree.build_leaf_tree(condensed)
    trace = persistence.persistence_trace(tree, condensed, measure)
    layers = persistence.find_layers(trace, top_layers)
    clustering = select.select_clusters(trace, tree, condensed)
    return FitResult(
        forest=forest, linkage=link, condensed=condensed, tree=tree,
        trace=trace, layers=layers, clustering=clustering,
        k=k, min_cluster_size=float(min_cluster_size), measure=measure,
    )


def components_without_leaves(result: FitResult) -> list[int]:
    """Connected components (by smallest point id) lacking any leaf.

    Such components can never contribute clusters because components
    themselves are not selectable; useful as a warning for precomputed
    forest inputs.
    """
    comp = mst.component_labels(result.forest)
    mask = result.tree.true_leaf_mask()
    table = persistence._MemberTable(result.condensed)
    covered = set()
    for seg in np.flatnonzero(mask):
        _, _, ids = table.members(int(seg))
        if len(ids):
            covered.add(int(comp[ids[0]]))
    return sorted(set(comp.tolist()) - covered)
