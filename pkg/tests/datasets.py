"""Shared dataset builders for the test suite."""

from __future__ import annotations

import numpy as np

from plscan import from_precomputed

# Hand-built three-chain forest: three path-shaped components joined by two
# bridges. Chain edges all share one weight per chain, so every in-chain
# merge attaches a single point and only the two bridges are accepted
# merges at min_cluster_size 5.
CHAIN_A = list(range(0, 25))     # 25 points joined at 0.92
CHAIN_B = list(range(25, 44))    # 19 points joined at 1.17
CHAIN_C = list(range(44, 150))   # 106 points joined at 0.48
BRIDGE_BC = (43, 44, 1.74)
BRIDGE_ABC = (24, 44, 8.14)

# Expected leaf tree for the three-chain forest at initial size 5:
# segment -> (parent, d_min, d_max, s_min, s_max)
CHAIN_LEAF_TREE = {
    0: (0, 0.00, 8.14, 25.0, 150.0),
    1: (0, 8.14, 8.14, 25.0, 25.0),
    2: (1, 0.92, 8.14, 5.0, 25.0),
    3: (1, 1.74, 8.14, 19.0, 25.0),
    4: (3, 1.17, 1.74, 5.0, 19.0),
    5: (3, 0.48, 1.74, 5.0, 19.0),
}


def three_chain_forest():
    """150-point forest with two accepted merges (at 1.74 and 8.14)."""
    edges = []
    for i in CHAIN_C[:-1]:
        edges.append((i, i + 1, 0.48))
    for i in CHAIN_A[:-1]:
        edges.append((i, i + 1, 0.92))
    for i in CHAIN_B[:-1]:
        edges.append((i, i + 1, 1.17))
    edges.append(BRIDGE_BC)
    edges.append(BRIDGE_ABC)
    return from_precomputed(edges, 150)


def two_star_forest():
    """Two star-shaped components (5 and 7 points) bridged at weight 1.

    Stars never produce accepted internal merges, so the only split is the
    bridge: two leaves alive for thresholds up to min(5, 7) = 5.
    """
    edges = [(0, i, 0.1) for i in range(1, 5)]
    edges += [(5, j, 0.2) for j in range(6, 12)]
    edges.append((0, 5, 1.0))
    return from_precomputed(edges, 12)


def two_level_forest():
    """22-point forest with a nested split and hand-checkable members.

    Component layout: two 5-point chains (A1 = 0..4, A2 = 5..9) bridged at
    0.6 into cluster A, a 12-point equal-edge chain B = 10..21, and an A-B
    bridge at 3.0. At initial size 3 the accepted merges are the two
    bridges plus the A1/A2 split, giving leaf intervals A1/A2 (3, 5],
    A (5, 10], B (3, 10].
    """
    edges = [
        (0, 1, 0.10), (1, 2, 0.12), (2, 3, 0.14), (3, 4, 0.16),
        (5, 6, 0.11), (6, 7, 0.13), (7, 8, 0.15), (8, 9, 0.17),
        (0, 5, 0.6),
    ]
    edges += [(i, i + 1, 0.2) for i in range(10, 21)]
    edges.append((0, 10, 3.0))
    return from_precomputed(edges, 22)


def blobs(n, n_centers, seed, dims=2, std=1.0, radius=20.0, noise_fraction=0.0):
    """Gaussian blobs on a circle of centres plus optional uniform noise.

    Returns (points, labels) with noise points labelled -1.
    """
    rng = np.random.default_rng(seed)
    angles = 2.0 * np.pi * np.arange(n_centers) / n_centers
    centers = np.zeros((n_centers, dims))
    centers[:, 0] = radius * np.cos(angles)
    centers[:, 1 % dims] = radius * np.sin(angles)
    if dims > 2:
        centers[:, 2:] = rng.uniform(-radius, radius, size=(n_centers, dims - 2))

    n_noise = int(round(n * noise_fraction))
    n_signal = n - n_noise
    labels = np.repeat(np.arange(n_centers), n_signal // n_centers)
    labels = np.concatenate([labels, rng.integers(0, n_centers, n_signal - len(labels))])
    points = centers[labels] + rng.normal(0.0, std, size=(n_signal, dims))
    if n_noise:
        noise = rng.uniform(-3.0 * radius, 3.0 * radius, size=(n_noise, dims))
        points = np.vstack([points, noise])
        labels = np.concatenate([labels, np.full(n_noise, -1)])
    order = rng.permutation(n)
    return points[order], labels[order]


def random_points(n, dims, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return rng.normal(0.0, scale, size=(n, dims))


def write_points_csv(path, points, header=False):
    lines = []
    if header:
        lines.append(",".join(f"x{j}" for j in range(points.shape[1])))
    for row in points:
        lines.append(",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_forest_csv(path, forest):
    lines = ["u,v,weight"]
    for a, b, w in zip(forest.u, forest.v, forest.weight):
        lines.append(f"{int(a)},{int(b)},{repr(float(w))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
