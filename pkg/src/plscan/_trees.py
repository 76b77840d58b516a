"""Numba kernels for the space trees (k-d tree and ball tree).

The tree layout is a flat preorder array shared by both tree kinds: every
node stores a point range ``[start, end)`` into a permutation array, a
bounding box (used by the k-d tree) and a bounding ball (used by the ball
tree). Queries are exact; equal-distance ties are broken by ascending point
index so results are reproducible across runs and thread counts.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

KIND_KD = 0
KIND_BALL = 1

# DFS stacks are sized for median-split trees; depth is ~log2(n).
_MAX_STACK = 128


def build_tree_arrays(points, leaf_capacity, kind):
    """Build the flat node arrays for ``points`` (float64, C-contiguous).

    Returns (perm, start, end, left, right, bmin, bmax, center, radius).
    Internal nodes split the widest dimension at the median; leaves hold at
    most ``leaf_capacity`` points.
    """
    n, _ = points.shape
    perm = np.arange(n, dtype=np.int64)
    start, end, left, right = [], [], [], []
    bmin, bmax, center, radius = [], [], [], []

    def new_node(lo, hi):
        node = len(start)
        start.append(lo)
        end.append(hi)
        left.append(-1)
        right.append(-1)
        pts = points[perm[lo:hi]]
        mn = pts.min(axis=0)
        mx = pts.max(axis=0)
        bmin.append(mn)
        bmax.append(mx)
        c = pts.mean(axis=0)
        center.append(c)
        # Inflate slightly so the ball bound stays a true lower bound under
        # floating-point rounding.
        r = float(np.sqrt(((pts - c) ** 2).sum(axis=1)).max())
        radius.append(r * (1.0 + 1e-12) + 1e-300)
        return node

    def split(node):
        lo, hi = start[node], end[node]
        if hi - lo <= leaf_capacity:
            return
        widths = bmax[node] - bmin[node]
        dim = int(np.argmax(widths))
        mid = (lo + hi) // 2
        seg = perm[lo:hi]
        order = np.argpartition(points[seg, dim], mid - lo)
        perm[lo:hi] = seg[order]
        l = new_node(lo, mid)
        left[node] = l
        split(l)
        r = new_node(mid, hi)
        right[node] = r
        split(r)

    root = new_node(0, n)
    split(root)
    return (
        perm,
        np.asarray(start, dtype=np.int64),
        np.asarray(end, dtype=np.int64),
        np.asarray(left, dtype=np.int64),
        np.asarray(right, dtype=np.int64),
        np.asarray(bmin, dtype=np.float64),
        np.asarray(bmax, dtype=np.float64),
        np.asarray(center, dtype=np.float64),
        np.asarray(radius, dtype=np.float64),
    )


@njit(cache=True, inline="always")
def _sq_dist(points, i, q):
    acc = 0.0
    for t in range(q.shape[0]):
        diff = points[i, t] - q[t]
        acc += diff * diff
    return acc


@njit(cache=True, inline="always")
def _node_bound(kind, node, q, bmin, bmax, center, radius):
    """Lower bound on the distance from ``q`` to any point in ``node``."""
    if kind == KIND_KD:
        acc = 0.0
        for t in range(q.shape[0]):
            v = q[t]
            lo = bmin[node, t]
            hi = bmax[node, t]
            if v < lo:
                diff = lo - v
                acc += diff * diff
            elif v > hi:
                diff = v - hi
                acc += diff * diff
        return np.sqrt(acc)
    acc = 0.0
    for t in range(q.shape[0]):
        diff = q[t] - center[node, t]
        acc += diff * diff
    b = np.sqrt(acc) - radius[node]
    return b if b > 0.0 else 0.0


@njit(cache=True, inline="always")
def _heap_worse(d1, i1, d2, i2):
    """True when candidate 1 ranks after candidate 2 (farther, ties by index)."""
    if d1 > d2:
        return True
    if d1 < d2:
        return False
    return i1 > i2


@njit(cache=True)
def _heap_push(heap_d, heap_i, count, d, i):
    pos = count
    heap_d[pos] = d
    heap_i[pos] = i
    while pos > 0:
        up = (pos - 1) // 2
        if _heap_worse(heap_d[pos], heap_i[pos], heap_d[up], heap_i[up]):
            heap_d[pos], heap_d[up] = heap_d[up], heap_d[pos]
            heap_i[pos], heap_i[up] = heap_i[up], heap_i[pos]
            pos = up
        else:
            break
    return count + 1


@njit(cache=True)
def _heap_replace_root(heap_d, heap_i, count, d, i):
    heap_d[0] = d
    heap_i[0] = i
    pos = 0
    while True:
        l = 2 * pos + 1
        r = l + 1
        worst = pos
        if l < count and _heap_worse(heap_d[l], heap_i[l], heap_d[worst], heap_i[worst]):
            worst = l
        if r < count and _heap_worse(heap_d[r], heap_i[r], heap_d[worst], heap_i[worst]):
            worst = r
        if worst == pos:
            break
        heap_d[pos], heap_d[worst] = heap_d[worst], heap_d[pos]
        heap_i[pos], heap_i[worst] = heap_i[worst], heap_i[pos]
        pos = worst


@njit(cache=True)
def _knn_single(
    points, perm, start, end, left, right, bmin, bmax, center, radius,
    kind, qi, k, out_d, out_i,
):
    q = points[qi]
    heap_d = np.empty(k, dtype=np.float64)
    heap_i = np.empty(k, dtype=np.int64)
    count = 0
    stack = np.empty(_MAX_STACK, dtype=np.int64)
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        node = stack[top]
        if count == k:
            bound = _node_bound(kind, node, q, bmin, bmax, center, radius)
            if bound > heap_d[0]:
                continue
        if left[node] < 0:
            for p in range(start[node], end[node]):
                j = perm[p]
                if j == qi:
                    continue
                d = np.sqrt(_sq_dist(points, j, q))
                if count < k:
                    count = _heap_push(heap_d, heap_i, count, d, j)
                elif _heap_worse(heap_d[0], heap_i[0], d, j):
                    _heap_replace_root(heap_d, heap_i, count, d, j)
        else:
            l = left[node]
            r = right[node]
            bl = _node_bound(kind, l, q, bmin, bmax, center, radius)
            br = _node_bound(kind, r, q, bmin, bmax, center, radius)
            # Push the farther child first so the nearer one is visited next.
            if bl <= br:
                stack[top] = r
                stack[top + 1] = l
            else:
                stack[top] = l
                stack[top + 1] = r
            top += 2
    # Heap-sort into ascending (distance, index) order; the max-heap root is
    # the worst remaining candidate, so moving it to the end sorts ascending.
    for m in range(count - 1, 0, -1):
        root_d = heap_d[0]
        root_i = heap_i[0]
        _heap_replace_root(heap_d, heap_i, m, heap_d[m], heap_i[m])
        heap_d[m] = root_d
        heap_i[m] = root_i
    for m in range(count):
        out_d[m] = heap_d[m]
        out_i[m] = heap_i[m]


@njit(cache=True, parallel=True)
def knn_all(points, perm, start, end, left, right, bmin, bmax, center, radius, kind, k):
    n = points.shape[0]
    out_d = np.empty((n, k), dtype=np.float64)
    out_i = np.empty((n, k), dtype=np.int64)
    for qi in prange(n):
        _knn_single(
            points, perm, start, end, left, right, bmin, bmax, center, radius,
            kind, qi, k, out_d[qi], out_i[qi],
        )
    return out_d, out_i


@njit(cache=True)
def _uf_find(uf_parent, x):
    root = x
    while uf_parent[root] != root:
        root = uf_parent[root]
    while uf_parent[x] != root:
        nxt = uf_parent[x]
        uf_parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def refresh_components(uf_parent, comp_of):
    for i in range(comp_of.shape[0]):
        comp_of[i] = _uf_find(uf_parent, i)


@njit(cache=True)
def update_node_components(perm, start, end, left, right, comp_of, node_comp):
    # Children are created after their parent (preorder), so a reverse sweep
    # sees both children before the parent.
    for node in range(node_comp.shape[0] - 1, -1, -1):
        if left[node] < 0:
            c = comp_of[perm[start[node]]]
            for p in range(start[node] + 1, end[node]):
                if comp_of[perm[p]] != c:
                    c = -1
                    break
            node_comp[node] = c
        else:
            cl = node_comp[left[node]]
            if cl >= 0 and cl == node_comp[right[node]]:
                node_comp[node] = cl
            else:
                node_comp[node] = -1


@njit(cache=True, parallel=True)
def boruvka_candidates(
    points, perm, start, end, left, right, bmin, bmax, center, radius,
    kind, core, comp_of, node_comp, cand_w, cand_j,
):
    """Per point: cheapest mutual-reachability edge to another component.

    Ties are broken by the (min endpoint, max endpoint) pair so the result
    does not depend on traversal details or worker count.
    """
    n = points.shape[0]
    for i in prange(n):
        q = points[i]
        ci = comp_of[i]
        core_i = core[i]
        best_w = np.inf
        best_a = -1
        best_b = -1
        best_j = -1
        stack = np.empty(_MAX_STACK, dtype=np.int64)
        stack[0] = 0
        top = 1
        while top > 0:
            top -= 1
            node = stack[top]
            if node_comp[node] == ci:
                continue
            bound = _node_bound(kind, node, q, bmin, bmax, center, radius)
            if bound > best_w:
                continue
            if left[node] < 0:
                for p in range(start[node], end[node]):
                    j = perm[p]
                    if comp_of[j] == ci:
                        continue
                    core_j = core[j]
                    if core_j > best_w:
                        continue
                    d = np.sqrt(_sq_dist(points, j, q))
                    w = d
                    if core_i > w:
                        w = core_i
                    if core_j > w:
                        w = core_j
                    if w > best_w:
                        continue
                    if i < j:
                        a, b = i, j
                    else:
                        a, b = j, i
                    if (
                        w < best_w
                        or (w == best_w and (a < best_a or (a == best_a and b < best_b)))
                    ):
                        best_w = w
                        best_a = a
                        best_b = b
                        best_j = j
            else:
                l = left[node]
                r = right[node]
                bl = _node_bound(kind, l, q, bmin, bmax, center, radius)
                br = _node_bound(kind, r, q, bmin, bmax, center, radius)
                if bl <= br:
                    stack[top] = r
                    stack[top + 1] = l
                else:
                    stack[top] = l
                    stack[top + 1] = r
                top += 2
        cand_w[i] = best_w
        cand_j[i] = best_j


@njit(cache=True)
def boruvka_merge(
    cand_w, cand_j, uf_parent, uf_size, comp_of,
    best_w, best_a, best_b,
    edges_u, edges_v, edges_w, n_edges,
):
    """Reduce per-point candidates to per-component winners and union them.

    Serial by design: the scan order (ascending point index, then ascending
    component root) pins the result for equal-weight edges.
    """
    n = cand_w.shape[0]
    for r in range(n):
        best_w[r] = np.inf
        best_a[r] = -1
        best_b[r] = -1
    for i in range(n):
        j = cand_j[i]
        if j < 0:
            continue
        w = cand_w[i]
        if i < j:
            a, b = i, j
        else:
            a, b = j, i
        r = comp_of[i]
        if (
            w < best_w[r]
            or (w == best_w[r] and (a < best_a[r] or (a == best_a[r] and b < best_b[r])))
        ):
            best_w[r] = w
            best_a[r] = a
            best_b[r] = b
    for r in range(n):
        a = best_a[r]
        if a < 0:
            continue
        b = best_b[r]
        ra = _uf_find(uf_parent, a)
        rb = _uf_find(uf_parent, b)
        if ra == rb:
            continue
        if uf_size[ra] < uf_size[rb]:
            ra, rb = rb, ra
        uf_parent[rb] = ra
        uf_size[ra] += uf_size[rb]
        edges_u[n_edges] = a
        edges_v[n_edges] = b
        edges_w[n_edges] = best_w[r]
        n_edges += 1
    return n_edges
