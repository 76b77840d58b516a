"""PLSCAN: density-based clustering over all minimum cluster sizes.

The pipeline builds a mutual reachability minimum spanning forest, a
single-linkage tree, and a condensed tree, then derives the leaf-cluster
hierarchy for every minimum cluster size threshold at once. Persistence
of the leaf clusters over that threshold axis drives automatic cluster
selection and ranked alternative layers.
"""

from .condense import CondensedTree, condense_tree
from .leaf_tree import (
    LeafInterval,
    LeafTree,
    build_leaf_tree,
    leaves_at,
    true_leaf_intervals,
)
from .linkage import LinkageTree, single_linkage
from .mst import SpanningForest, build_mst, from_precomputed
from .persistence import (
    MEASURES,
    LayerSet,
    PersistenceTrace,
    birth_distance,
    find_layers,
    lambda_of,
    persistence_trace,
    size_persistence,
)
from .pipeline import FitResult, fit
from .select import Clustering, extract_layer, select_clusters
from .spatial import (
    CoreDistances,
    PointSet,
    SpatialIndex,
    build_index,
    core_distances,
    knn,
    mutual_reachability,
)

__version__ = "0.1.0"

__all__ = [
    "CondensedTree",
    "CoreDistances",
    "Clustering",
    "FitResult",
    "LayerSet",
    "LeafInterval",
    "LeafTree",
    "LinkageTree",
    "MEASURES",
    "PersistenceTrace",
    "PointSet",
    "SpanningForest",
    "SpatialIndex",
    "birth_distance",
    "build_index",
    "build_leaf_tree",
    "build_mst",
    "condense_tree",
    "core_distances",
    "extract_layer",
    "find_layers",
    "fit",
    "from_precomputed",
    "knn",
    "lambda_of",
    "leaves_at",
    "mutual_reachability",
    "persistence_trace",
    "select_clusters",
    "single_linkage",
    "size_persistence",
    "true_leaf_intervals",
]
