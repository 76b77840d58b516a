"""Persistence measures and the persistence trace.

The trace evaluates the total persistence of all alive leaf clusters at
every size breakpoint (the unique s_min/s_max values of the leaf tree).
Five measures are supported: ``size`` (threshold lifetime), ``d`` and
``lambda`` (distance/density range at the evaluated threshold), and the
``size_d`` / ``size_lambda`` bi-persistences (area integrals of the d or
lambda persistence over the leaf's whole size lifetime).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .condense import CondensedTree
from .leaf_tree import LeafInterval, LeafTree

MEASURES = ("size", "d", "lambda", "size_d", "size_lambda")


@dataclass(frozen=True)
class PersistenceTrace:
    """Total persistence per breakpoint; a right-open step function."""

    breakpoints: np.ndarray
    totals: np.ndarray
    measure: str


@dataclass(frozen=True)
class LayerSet:
    """Local trace maxima ranked by total persistence (descending)."""

    cuts: np.ndarray
    totals: np.ndarray

    def __len__(self) -> int:
        return len(self.cuts)


def size_persistence(interval: LeafInterval) -> float:
    return interval.death - interval.birth


def lambda_of(d: float) -> float:
    """Density corresponding to a mutual reachability distance."""
    return float(np.exp(-d))


class _MemberTable:
    """Per-segment member points of a condensed tree.

    A segment's members are the point rows of its whole condensed subtree;
    the set is threshold-independent, only the membership *distances*
    interact with the threshold. Members are cached sorted by join
    distance together with their cumulative weight.
    """

    def __init__(self, condensed: CondensedTree):
        n = condensed.n
        n_segments = condensed.n_segments
        self._children: list[list[int]] = [[] for _ in range(n_segments)]
        for row in condensed.pair_rows:
            parent_idx = condensed.parent[row] - n
            self._children[parent_idx].append(condensed.child[row] - n)
            self._children[parent_idx].append(condensed.child[row + 1] - n)
        pr = condensed.point_rows()
        self._point_parent = condensed.parent[pr] - n
        self._point_dist = condensed.distance[pr]
        self._point_weight = condensed.size[pr]
        self._point_id = condensed.child[pr]
        self._by_parent: list[list[int]] = [[] for _ in range(n_segments)]
        for i, p in enumerate(self._point_parent):
            self._by_parent[p].append(i)
        self._cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def members(self, segment: int):
        """(distances, cumulative weights, point ids) sorted by distance."""
        cached = self._cache.get(segment)
        if cached is not None:
            return cached
        rows: list[int] = []
        stack = [segment]
        while stack:
            seg = stack.pop()
            rows.extend(self._by_parent[seg])
            stack.extend(self._children[seg])
        idx = np.asarray(rows, dtype=np.int64)
        dists = self._point_dist[idx]
        order = np.argsort(dists, kind="stable")
        dists = dists[order]
        cumw = np.cumsum(self._point_weight[idx][order])
        ids = self._point_id[idx][order]
        result = (dists, cumw, ids)
        self._cache[segment] = result
        return result


def birth_distance(
    leaf: int, min_cluster_size: float, condensed: CondensedTree,
    tree: LeafTree, table: _MemberTable | None = None,
) -> float:
    """Smallest distance at which the leaf's member weight reaches m_c."""
    if table is None:
        table = _MemberTable(condensed)
    dists, cumw, _ = table.members(leaf)
    pos = int(np.searchsorted(cumw, min_cluster_size, side="left"))
    if pos >= len(dists):
        raise ValueError(f"segment {leaf} never reaches size {min_cluster_size}")
    return float(dists[pos])


def persistence_trace(
    tree: LeafTree, condensed: CondensedTree, measure: str = "size"
) -> PersistenceTrace:
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    breakpoints = np.unique(np.concatenate([tree.s_min, tree.s_max]))
    totals = np.zeros(len(breakpoints), dtype=np.float64)
    leaves = np.flatnonzero(tree.true_leaf_mask())
    table = _MemberTable(condensed) if measure != "size" else None

    for leaf in leaves:
        birth = tree.s_min[leaf]
        death = tree.s_max[leaf]
        lo = int(np.searchsorted(breakpoints, birth, side="left"))
        hi = int(np.searchsorted(breakpoints, death, side="left"))
        if measure == "size":
            totals[lo:hi] += death - birth
            continue
        dists, cumw, _ = table.members(leaf)
        if measure in ("d", "lambda"):
            bps = breakpoints[lo:hi]
            pos = np.searchsorted(cumw, bps, side="left")
            birth_d = dists[pos]
            if measure == "d":
                totals[lo:hi] += tree.d_max[leaf] - birth_d
            else:
                totals[lo:hi] += np.exp(-birth_d) - np.exp(-tree.d_max[leaf])
        else:
            # Bi-persistence: integrate the d (or lambda) persistence over
            # the size lifetime. birth_distance is a step function of the
            # threshold, constant on each cumulative-weight interval
            # (W_{j-1}, W_j], so the integral is an exact finite sum.
            w_hi = np.clip(cumw, birth, death)
            w_lo = np.clip(np.concatenate(([0.0], cumw[:-1])), birth, death)
            span = w_hi - w_lo
            if measure == "size_d":
                pers = tree.d_max[leaf] - dists
            else:
                pers = np.exp(-dists) - np.exp(-tree.d_max[leaf])
            totals[lo:hi] += float(np.dot(pers, span))

    return PersistenceTrace(breakpoints=breakpoints, totals=totals, measure=measure)


def find_layers(trace: PersistenceTrace, top_n: int = 5) -> LayerSet:
    """Local maxima of the trace, plateaus collapsed to their first cut."""
    if top_n < 1:
        raise ValueError("top_n must be at least 1")
    totals = trace.totals
    m = len(totals)
    cuts = []
    peak_totals = []
    for i in range(m):
        if i > 0 and totals[i] == totals[i - 1]:
            continue  # plateau: keep only its smallest breakpoint
        if i > 0 and totals[i] < totals[i - 1]:
            continue
        if i + 1 < m and totals[i] < totals[i + 1]:
            continue
        cuts.append(trace.breakpoints[i])
        peak_totals.append(totals[i])
    order = sorted(range(len(cuts)), key=lambda j: (-peak_totals[j], cuts[j]))
    order = order[:top_n]
    return LayerSet(
        cuts=np.asarray([cuts[j] for j in order], dtype=np.float64),
        totals=np.asarray([peak_totals[j] for j in order], dtype=np.float64),
    )
