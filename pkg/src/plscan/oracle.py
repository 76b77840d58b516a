"""Brute-force reference implementations for tests and verification.

Everything here trades speed for obviousness and shares nothing with the
production path beyond primitive containers: quadratic k-NN and Prim MST,
a recursive breadth-first condensation, a per-threshold leaf sweep, and
the pruning-metric barcode. Cluster identity is canonicalised as the
frozen set of member points so content can be compared across
implementations regardless of label numbering or row order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linkage import LinkageTree
from .mst import SpanningForest

ROOT = "ROOT"


def _pairwise_distances(points: np.ndarray, metric: str = "euclidean") -> np.ndarray:
    """Distance matrix accumulated one dimension at a time.

    The per-dimension accumulation order matches the scalar loops of the
    production kernels, so values agree bit for bit.
    """
    coords = np.ascontiguousarray(points, dtype=np.float64)
    if metric == "cosine":
        norms = np.sqrt((coords**2).sum(axis=1))
        coords = coords / norms[:, None]
    elif metric != "euclidean":
        raise ValueError(f"unsupported metric {metric!r}")
    n, dims = coords.shape
    acc = np.zeros((n, n), dtype=np.float64)
    for t in range(dims):
        diff = coords[:, t][:, None] - coords[:, t][None, :]
        acc += diff * diff
    dist = np.sqrt(acc)
    if metric == "cosine":
        dist = dist * dist / 2.0
    return dist


def brute_knn(points: np.ndarray, k: int, metric: str = "euclidean"):
    """All-pairs exact k-NN, self excluded, ties by ascending index."""
    dist = _pairwise_distances(points, metric)
    n = len(dist)
    np.fill_diagonal(dist, np.inf)
    out_d = np.empty((n, k), dtype=np.float64)
    out_i = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        order = np.argsort(dist[i], kind="stable")[:k]
        out_i[i] = order
        out_d[i] = dist[i][order]
    return out_d, out_i


def brute_core_distances(points: np.ndarray, k: int, metric: str = "euclidean") -> np.ndarray:
    d, _ = brute_knn(points, k, metric)
    return d[:, k - 1]


def prim_mst(points: np.ndarray, cores: np.ndarray, metric: str = "euclidean") -> SpanningForest:
    """Quadratic Prim MST over the mutual reachability graph."""
    dist = _pairwise_distances(points, metric)
    n = len(dist)
    mr = np.maximum(dist, np.maximum(cores[:, None], cores[None, :]))
    np.fill_diagonal(mr, np.inf)
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best_from = np.full(n, -1, dtype=np.int64)
    in_tree[0] = True
    best = mr[0].copy()
    best_from[:] = 0
    us, vs, ws = [], [], []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best)
        j = int(np.argmin(cand))
        i = int(best_from[j])
        us.append(min(i, j))
        vs.append(max(i, j))
        ws.append(best[j])
        in_tree[j] = True
        closer = mr[j] < best
        best[closer] = mr[j][closer]
        best_from[closer] = j
    return SpanningForest(
        u=np.asarray(us, dtype=np.int64), v=np.asarray(vs, dtype=np.int64),
        weight=np.asarray(ws, dtype=np.float64), n=n,
    )


def _node_members(linkage: LinkageTree) -> list[frozenset]:
    """Member point set of every linkage node (points then merges)."""
    n = linkage.n
    members = [frozenset((i,)) for i in range(n)]
    for t in range(linkage.n_merges):
        members.append(members[linkage.left[t]] | members[linkage.right[t]])
    return members


def _component_roots(linkage: LinkageTree) -> list[int]:
    n = linkage.n
    total = n + linkage.n_merges
    is_child = np.zeros(total, dtype=bool)
    is_child[linkage.left] = True
    is_child[linkage.right] = True
    return [node for node in range(total) if not is_child[node]]


@dataclass
class RefCondensation:
    """Canonical condensation content keyed by member point sets.

    ``cluster_rows``: set of (parent members | ROOT-top handled via real
    sets, child members, distance, size). ``point_rows``: multiset (as a
    sorted tuple) of (owner members or ROOT, point, distance, weight).
    ``leaves``: member sets of childless non-top clusters. ``tops``:
    member sets of per-component top clusters.
    """

    cluster_rows: frozenset
    point_rows: tuple
    leaves: frozenset
    tops: frozenset


def bfs_condense(linkage: LinkageTree, m_c: float, members=None) -> RefCondensation:
    """Reference condensation via top-down branch collection."""
    n = linkage.n
    weights = linkage.weights
    if m_c <= weights.max():
        raise ValueError("m_c must exceed the maximum sample weight")
    if members is None:
        members = _node_members(linkage)

    def size_of(node):
        return weights[node] if node < n else linkage.size[node - n]

    cluster_rows = set()
    point_rows = []
    has_children: dict[frozenset, bool] = {}
    tops = set()

    def emit_points(node, owner, distance):
        for p in sorted(members[node]):
            point_rows.append((owner, p, float(distance), float(weights[p])))

    for root in _component_roots(linkage):
        if root < n:
            point_rows.append((ROOT, root, 0.0, float(weights[root])))
            continue
        if size_of(root) < m_c:
            emit_points(root, ROOT, linkage.distance[root - n])
            continue
        stack = [(root, ROOT)]
        while stack:
            node, cluster = stack.pop()
            t = node - n
            left, right = linkage.left[t], linkage.right[t]
            d = float(linkage.distance[t])
            ls, rs = size_of(left), size_of(right)
            if ls >= m_c and rs >= m_c:
                if cluster is ROOT:
                    cluster = members[node]
                    tops.add(cluster)
                    has_children.setdefault(cluster, True)
                has_children[cluster] = True
                for side, ssize in ((left, ls), (right, rs)):
                    child = members[side]
                    cluster_rows.add((cluster, child, d, float(ssize)))
                    has_children.setdefault(child, False)
                    stack.append((side, child))
            else:
                for side, ssize in ((left, ls), (right, rs)):
                    if ssize < m_c:
                        if side < n:
                            point_rows.append(
                                (cluster, side, d, float(weights[side]))
                            )
                        else:
                            emit_points(side, cluster, d)
                    else:
                        stack.append((side, cluster))

    leaves = frozenset(
        c for c, kids in has_children.items() if not kids and c not in tops
    )
    canonical_points = tuple(sorted(
        point_rows, key=lambda r: (r[1], r[2], 0 if r[0] is ROOT else 1)
    ))
    return RefCondensation(
        cluster_rows=frozenset(cluster_rows),
        point_rows=canonical_points,
        leaves=leaves,
        tops=frozenset(tops),
    )


def condensed_content(condensed) -> tuple[frozenset, tuple]:
    """Canonicalise a production CondensedTree for content comparison."""
    n = condensed.n
    children: dict[int, list[int]] = {}
    for row in condensed.pair_rows:
        p = int(condensed.parent[row])
        children.setdefault(p, []).extend(
            (int(condensed.child[row]), int(condensed.child[row + 1]))
        )
    pr = condensed.point_rows()
    by_label: dict[int, set] = {}
    for row in pr:
        by_label.setdefault(int(condensed.parent[row]), set()).add(int(condensed.child[row]))

    member_cache: dict[int, frozenset] = {}

    def members(label):
        got = member_cache.get(label)
        if got is not None:
            return got
        pts = set(by_label.get(label, ()))
        for child in children.get(label, ()):
            pts |= members(child)
        result = frozenset(pts)
        member_cache[label] = result
        return result

    cluster_rows = set()
    for row in condensed.pair_rows:
        for r in (row, row + 1):
            cluster_rows.add((
                members(int(condensed.parent[r])),
                members(int(condensed.child[r])),
                float(condensed.distance[r]),
                float(condensed.size[r]),
            ))
    point_rows = []
    for row in pr:
        p = int(condensed.parent[row])
        owner = ROOT if p == n else members(p)
        point_rows.append((
            owner, int(condensed.child[row]),
            float(condensed.distance[row]), float(condensed.size[row]),
        ))
    canonical_points = tuple(sorted(
        point_rows, key=lambda r: (r[1], r[2], 0 if r[0] is ROOT else 1)
    ))
    return frozenset(cluster_rows), canonical_points


def _canonical_bar(alive: list[int], k: int) -> tuple[float, float]:
    """Map a contiguous alive-threshold set {a..b} to (birth, death]."""
    a, b = alive[0], alive[-1]
    birth = a - 1 if a > k else k
    return (float(birth), float(b))


def sweep_leaves(linkage: LinkageTree, k: int) -> dict[int, frozenset]:
    """Leaf member sets of a fresh condensation at every integer m_c."""
    n = linkage.n
    members = _node_members(linkage)
    return {
        m: bfs_condense(linkage, m, members=members).leaves
        for m in range(k, n + 1)
    }


def leaf_lifetimes_by_sweep(linkage: LinkageTree, k: int) -> list[tuple[float, float]]:
    """Leaf intervals (birth, death] from per-threshold recomputation."""
    per_m = sweep_leaves(linkage, k)
    alive: dict[frozenset, list[int]] = {}
    for m in sorted(per_m):
        for leaf in per_m[m]:
            alive.setdefault(leaf, []).append(m)
    bars = []
    for leaf, ms in alive.items():
        if ms != list(range(ms[0], ms[-1] + 1)):
            raise AssertionError("leaf lifetime is not contiguous")
        birth, death = _canonical_bar(ms, k)
        if birth < death:
            bars.append((birth, death))
    return sorted(bars)


def sweep_total_at(
    bars: list[tuple[float, float]], m: int, k: int
) -> float:
    """Brute-force total size persistence at an integer threshold."""
    total = 0.0
    for birth, death in bars:
        if birth < m <= death or (birth == m == k):
            total += death - birth
    return total


def trace_value_at(trace, m: float) -> float:
    """Evaluate a breakpointed trace at an arbitrary threshold.

    The value at ``m`` is the total at the largest breakpoint strictly
    below ``m``, clamped to the first breakpoint.
    """
    idx = int(np.searchsorted(trace.breakpoints, m, side="left")) - 1
    return float(trace.totals[max(idx, 0)])


@dataclass(frozen=True)
class PruningMetricSpace:
    """2n-element ultrametric space of pruning thresholds.

    Element i < n is data point x_i; element n + i is its special
    companion pi_i, joining at the first threshold where x_i is in no
    leaf. Distances may be infinite when two points never share a leaf.
    """

    n: int
    k: int
    dist: np.ndarray


def build_pruning_metric(linkage: LinkageTree, k: int) -> PruningMetricSpace:
    n = linkage.n
    per_m = sweep_leaves(linkage, k)
    size = 2 * n
    dist = np.full((size, size), np.inf)
    np.fill_diagonal(dist, 0.0)

    # x-x: first threshold placing both points in one leaf.
    for m in sorted(per_m):
        for leaf in per_m[m]:
            pts = sorted(leaf)
            for a_pos, a in enumerate(pts):
                for b in pts[a_pos + 1:]:
                    if not np.isfinite(dist[a, b]):
                        dist[a, b] = dist[b, a] = m
    # x-pi: first threshold at which the point is in no leaf.
    for i in range(n):
        x_pi = float(n + 1)  # past the last threshold: no leaves remain
        for m in sorted(per_m):
            if not any(i in leaf for leaf in per_m[m]):
                x_pi = float(m)
                break
        dist[i, n + i] = dist[n + i, i] = x_pi
    # Remaining pairs follow from the max composition through the data
    # points, mirroring how the ultrametric closes over the companions.
    for i in range(n):
        for j in range(i + 1, n):
            v = max(dist[i, n + i], dist[i, j], dist[j, n + j])
            dist[n + i, n + j] = dist[n + j, n + i] = v
            dist[i, n + j] = dist[n + j, i] = max(dist[i, j], dist[j, n + j])
            dist[j, n + i] = dist[n + i, j] = max(dist[i, j], dist[i, n + i])

    space = PruningMetricSpace(n=n, k=k, dist=dist)
    _check_ultrametric(space)
    return space


def _check_ultrametric(space: PruningMetricSpace) -> None:
    d = space.dist
    size = len(d)
    for a in range(size):
        for b in range(a + 1, size):
            lhs = d[a, b]
            through = np.maximum(d[a], d[b])
            if (lhs > through + 1e-12).any():
                c = int(np.argmin(through))
                raise ValueError(
                    f"ultrametric violation at ({a}, {b}) through {c}"
                )


def pruning_barcode(space: PruningMetricSpace) -> list[tuple[float, float]]:
    """Leaf intervals recovered from the pruning metric filtration.

    Runs single linkage level by level over integer thresholds; at each
    level the connected components that still contain a point whose
    companion pi is elsewhere are the leaf clusters. Components are
    stitched across levels by their x-member sets, treating merges as new
    entities, which mirrors how the leaf tree assigns parent segments.
    """
    n = space.n
    k = space.k
    size = 2 * n
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    finite = space.dist[np.isfinite(space.dist) & (space.dist > 0)]
    top = int(finite.max()) if len(finite) else k
    edges = [
        (space.dist[a, b], a, b)
        for a in range(size) for b in range(a + 1, size)
        if np.isfinite(space.dist[a, b]) and space.dist[a, b] > 0
    ]
    edges.sort()
    pos = 0
    alive: dict[frozenset, list[int]] = {}
    for s in range(k, top + 1):
        while pos < len(edges) and edges[pos][0] <= s:
            _, a, b = edges[pos]
            parent[find(a)] = find(b)
            pos += 1
        comps: dict[int, list[int]] = {}
        for e in range(size):
            comps.setdefault(find(e), []).append(e)
        for comp in comps.values():
            xs = [e for e in comp if e < n]
            if not xs:
                continue
            pis = {e - n for e in comp if e >= n}
            if any(x not in pis for x in xs):
                alive.setdefault(frozenset(xs), []).append(s)
    bars = []
    for leaf, ms in alive.items():
        if ms != list(range(ms[0], ms[-1] + 1)):
            raise AssertionError("barcode component lifetime is not contiguous")
        birth, death = _canonical_bar(ms, k)
        if birth < death:
            bars.append((birth, death))
    return sorted(bars)
