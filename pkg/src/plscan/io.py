"""CSV input/output with stable, reproducible formatting.

Floats are written with ``%.<P>g`` where ``P`` comes from the
``PLSCAN_PRECISION`` environment variable (default 9 significant digits),
so identical runs produce byte-identical files.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .mst import SpanningForest, from_precomputed


class InputError(ValueError):
    """Malformed input file; message carries the offending line number."""


def float_precision() -> int:
    raw = os.environ.get("PLSCAN_PRECISION", "9")
    try:
        precision = int(raw)
    except ValueError as exc:
        raise InputError(f"PLSCAN_PRECISION must be an integer, got {raw!r}") from exc
    if not 1 <= precision <= 17:
        raise InputError("PLSCAN_PRECISION must be between 1 and 17")
    return precision


def fmt(value: float, precision: int | None = None) -> str:
    if precision is None:
        precision = float_precision()
    return f"%.{precision}g" % float(value)


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def read_points_csv(path) -> np.ndarray:
    """Read a points matrix; an optional header line is auto-detected."""
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = [t.strip() for t in line.split(",")]
            if lineno == 1 and not all(_is_float(t) for t in tokens):
                continue  # header
            if not all(_is_float(t) for t in tokens):
                raise InputError(f"{path}:{lineno}: non-numeric value in points row")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise InputError(
                    f"{path}:{lineno}: expected {width} columns, got {len(tokens)}"
                )
            rows.append([float(t) for t in tokens])
    if not rows:
        raise InputError(f"{path}: no data rows found")
    return np.asarray(rows, dtype=np.float64)


def read_forest_csv(path, n: int | None = None) -> SpanningForest:
    """Read a precomputed forest; the header ``u,v,weight`` is mandatory."""
    edges = []
    max_vertex = -1
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip()
        if [t.strip() for t in header.split(",")] != ["u", "v", "weight"]:
            raise InputError(f"{path}:1: forest CSV must start with header 'u,v,weight'")
        for lineno, line in enumerate(handle, start=2):
            line = line.strip()
            if not line:
                continue
            tokens = [t.strip() for t in line.split(",")]
            if len(tokens) != 3:
                raise InputError(f"{path}:{lineno}: expected 3 columns")
            try:
                u, v, w = int(tokens[0]), int(tokens[1]), float(tokens[2])
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: malformed edge row") from exc
            edges.append((u, v, w))
            max_vertex = max(max_vertex, u, v)
    if n is None:
        n = max_vertex + 1
    try:
        return from_precomputed(edges, n)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def read_weights_csv(path, n: int) -> np.ndarray:
    """Read one positive sample weight per line (optional header)."""
    values = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            if lineno == 1 and not _is_float(line):
                continue
            if not _is_float(line):
                raise InputError(f"{path}:{lineno}: non-numeric weight")
            values.append(float(line))
    if len(values) != n:
        raise InputError(f"{path}: expected {n} weights, got {len(values)}")
    return np.asarray(values, dtype=np.float64)


def write_labels_csv(path, labels, probabilities) -> None:
    precision = float_precision()
    lines = ["point,label,probability"]
    for i, (label, prob) in enumerate(zip(labels, probabilities)):
        lines.append(f"{i},{int(label)},{fmt(prob, precision)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_trace_csv(path, trace) -> None:
    precision = float_precision()
    lines = ["min_size,total_persistence"]
    for b, t in zip(trace.breakpoints, trace.totals):
        lines.append(f"{fmt(b, precision)},{fmt(t, precision)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_layers_csv(path, layers) -> None:
    precision = float_precision()
    lines = ["rank,cut,total_persistence"]
    for rank, (cut, total) in enumerate(zip(layers.cuts, layers.totals), start=1):
        lines.append(f"{rank},{fmt(cut, precision)},{fmt(total, precision)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_leaf_tree_csv(path, tree) -> None:
    precision = float_precision()
    lines = ["segment,parent,d_min,d_max,s_min,s_max"]
    for i in range(tree.n_segments):
        lines.append(
            f"{i},{int(tree.parent[i])},{fmt(tree.d_min[i], precision)},"
            f"{fmt(tree.d_max[i], precision)},{fmt(tree.s_min[i], precision)},"
            f"{fmt(tree.s_max[i], precision)}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_condensed_csv(path, condensed) -> None:
    precision = float_precision()
    lines = ["parent,child,distance,size"]
    for p, c, d, s in zip(
        condensed.parent, condensed.child, condensed.distance, condensed.size
    ):
        lines.append(f"{int(p)},{int(c)},{fmt(d, precision)},{fmt(s, precision)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
