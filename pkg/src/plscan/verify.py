"""Cross-checks of the production pipeline against the brute-force oracles."""

from __future__ import annotations

import numpy as np

from . import oracle
from .leaf_tree import true_leaf_intervals
from .pipeline import FitResult, fit


def _check_mst(result: FitResult, points, metric, k, report) -> bool:
    cores = oracle.brute_core_distances(points, k, metric)
    reference = oracle.prim_mst(points, cores, metric)
    ours = np.sort(result.forest.weight)
    theirs = np.sort(reference.weight)
    ok = len(ours) == len(theirs) and bool(np.array_equal(ours, theirs))
    if ok:
        report.append("PASS mst-vs-prim: edge weight multisets identical")
    else:
        report.append(
            "FAIL mst-vs-prim: weight multisets differ "
            f"(ours sum {ours.sum():.12g}, oracle sum {theirs.sum():.12g})"
        )
    return ok


def _check_condense(result: FitResult, report) -> bool:
    reference = oracle.bfs_condense(result.linkage, result.min_cluster_size)
    clusters, points_rows = oracle.condensed_content(result.condensed)
    ok = True
    if clusters != reference.cluster_rows:
        missing = reference.cluster_rows - clusters
        extra = clusters - reference.cluster_rows
        report.append(
            f"FAIL condense-vs-bfs: cluster rows differ ({len(missing)} missing, "
            f"{len(extra)} extra)"
        )
        ok = False
    if points_rows != reference.point_rows:
        diffs = sum(a != b for a, b in zip(points_rows, reference.point_rows))
        report.append(
            f"FAIL condense-vs-bfs: point rows differ ({diffs} mismatched rows)"
        )
        ok = False
    if ok:
        report.append("PASS condense-vs-bfs: condensed tree content identical")
    return ok


def _check_leaf_intervals(result: FitResult, report) -> bool:
    k = int(result.min_cluster_size)
    bars = oracle.leaf_lifetimes_by_sweep(result.linkage, k)
    ours = sorted(
        (interval.birth, interval.death)
        for interval in true_leaf_intervals(result.tree)
    )
    if ours == bars:
        report.append("PASS leaf-tree-vs-sweep: interval multisets identical")
        return True
    only_ours = [b for b in ours if b not in bars]
    only_oracle = [b for b in bars if b not in ours]
    report.append(
        f"FAIL leaf-tree-vs-sweep: intervals differ (only ours: {only_ours[:5]}, "
        f"only oracle: {only_oracle[:5]})"
    )
    return False


def _check_trace(result: FitResult, report) -> bool:
    k = int(result.min_cluster_size)
    n = result.forest.n
    bars = oracle.leaf_lifetimes_by_sweep(result.linkage, k)
    bad = []
    for m in range(k, n + 1):
        expected = oracle.sweep_total_at(bars, m, k)
        got = oracle.trace_value_at(result.trace, m)
        if got != expected:
            bad.append((m, got, expected))
    if not bad:
        report.append("PASS trace-vs-sweep: size totals identical at all thresholds")
        return True
    report.append(f"FAIL trace-vs-sweep: {len(bad)} thresholds differ, first {bad[0]}")
    return False


def _check_barcode(result: FitResult, report) -> bool:
    k = int(result.min_cluster_size)
    space = oracle.build_pruning_metric(result.linkage, k)
    bars = oracle.pruning_barcode(space)
    ours = sorted(
        (interval.birth, interval.death)
        for interval in true_leaf_intervals(result.tree)
    )
    if ours == bars:
        report.append("PASS leaf-tree-vs-barcode: bar multisets identical")
        return True
    report.append(
        f"FAIL leaf-tree-vs-barcode: ours {ours[:5]}..., barcode {bars[:5]}..."
    )
    return False


def run_verification(
    points=None, forest=None, metric: str = "euclidean", k: int = 4,
    min_cluster_size: float | None = None,
):
    """Run all applicable oracle cross-checks; returns (ok, report lines).

    Sweeps assume unit weights; barcode checks are skipped above 30
    points to keep the quadratic metric space tractable.
    """
    result = fit(
        points=points, forest=forest, metric=metric, k=k,
        min_cluster_size=min_cluster_size,
    )
    report: list[str] = []
    ok = True
    if points is not None:
        ok &= _check_mst(result, np.asarray(points, dtype=np.float64), metric, k, report)
    ok &= _check_condense(result, report)
    if float(result.min_cluster_size).is_integer():
        ok &= _check_leaf_intervals(result, report)
        ok &= _check_trace(result, report)
        if result.forest.n <= 30:
            ok &= _check_barcode(result, report)
        else:
            report.append("SKIP leaf-tree-vs-barcode: n > 30")
    else:
        report.append("SKIP sweep checks: non-integer initial minimum cluster size")
    return ok, report
