"""Command line front end."""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import io as pio
from . import pipeline, select, verify
from .persistence import MEASURES


def _set_threads(threads: int | None) -> None:
    if threads is None:
        return
    if threads < 1:
        raise click.BadParameter("--threads must be at least 1")
    import numba

    numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))


def _load_inputs(input_path, forest_path, weights_path):
    if (input_path is None) == (forest_path is None):
        raise click.UsageError("provide exactly one of --input or --forest")
    points = forest = None
    if input_path is not None:
        points = pio.read_points_csv(input_path)
        n = len(points)
    else:
        forest = pio.read_forest_csv(forest_path)
        n = forest.n
    weights = pio.read_weights_csv(weights_path, n) if weights_path else None
    return points, forest, weights


def _run_fit(points, forest, weights, metric, k, min_cluster_size, measure, top_layers):
    return pipeline.fit(
        points=points, forest=forest, metric=metric, k=k,
        min_cluster_size=min_cluster_size, measure=measure,
        sample_weights=weights, top_layers=top_layers,
    )


_common = [
    click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
                 help="Points CSV (one row per point; optional header)."),
    click.option("--forest", "forest_path", type=click.Path(exists=True, dir_okay=False),
                 help="Precomputed forest CSV with header u,v,weight."),
    click.option("--weights", "weights_path", type=click.Path(exists=True, dir_okay=False),
                 help="Optional sample weights CSV, one per point."),
    click.option("--metric", type=click.Choice(["euclidean", "cosine"]),
                 default="euclidean", show_default=True),
    click.option("-k", "--neighbors", "k", type=int, default=4, show_default=True,
                 help="Number of neighbours for core distances."),
    click.option("--min-cluster-size", type=float, default=None,
                 help="Initial minimum cluster size (default max(k, 2))."),
    click.option("--measure", type=click.Choice(list(MEASURES)), default="size",
                 show_default=True),
    click.option("--top-layers", type=int, default=5, show_default=True),
    click.option("--threads", type=int, default=None,
                 help="Cap the number of worker threads."),
    click.option("--output-dir", "-o", type=click.Path(file_okay=False), default=".",
                 show_default=True),
]


def _with_common(func):
    for option in reversed(_common):
        func = option(func)
    return func


@click.group()
def main() -> None:
    """PLSCAN: density-based clustering with automatic cluster size selection."""


@main.command()
@_with_common
def fit(input_path, forest_path, weights_path, metric, k, min_cluster_size,
        measure, top_layers, threads, output_dir):
    """Cluster the input and write all result files."""
    _set_threads(threads)
    try:
        points, forest, weights = _load_inputs(input_path, forest_path, weights_path)
        result = _run_fit(points, forest, weights, metric, k, min_cluster_size,
                          measure, top_layers)
    except (pio.InputError, ValueError) as exc:
        raise click.ClickException(str(exc))

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    pio.write_labels_csv(out / "labels.csv", result.labels, result.probabilities)
    pio.write_trace_csv(out / "trace.csv", result.trace)
    pio.write_layers_csv(out / "layers.csv", result.layers)
    pio.write_leaf_tree_csv(out / "leaf_tree.csv", result.tree)
    for rank, cut in enumerate(result.layers.cuts, start=1):
        layer = select.extract_layer(float(cut), result.tree, result.condensed)
        pio.write_labels_csv(out / f"layer_{rank}.csv", layer.labels, layer.probabilities)

    if forest is not None:
        lonely = pipeline.components_without_leaves(result)
        if lonely:
            click.echo(
                "warning: component(s) without any selectable leaf cluster: "
                + ", ".join(str(c) for c in lonely)
                + " (components themselves cannot be selected; ensure each "
                "component contains at least two clusters)",
                err=True,
            )

    clustering = result.clustering
    click.echo(f"clusters: {clustering.n_clusters}")
    click.echo(f"noise fraction: {pio.fmt(clustering.noise_fraction())}")
    click.echo(f"cut: {pio.fmt(clustering.cut)}")


@main.command()
@click.option("--cut", type=float, required=True, help="Size threshold of the layer.")
@_with_common
def layer(cut, input_path, forest_path, weights_path, metric, k, min_cluster_size,
          measure, top_layers, threads, output_dir):
    """Extract a flat clustering at an explicit size cut."""
    _set_threads(threads)
    try:
        points, forest, weights = _load_inputs(input_path, forest_path, weights_path)
        result = _run_fit(points, forest, weights, metric, k, min_cluster_size,
                          measure, top_layers)
        clustering = select.extract_layer(cut, result.tree, result.condensed)
    except (pio.InputError, ValueError) as exc:
        raise click.ClickException(str(exc))
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    pio.write_labels_csv(out / "layer.csv", clustering.labels, clustering.probabilities)
    click.echo(f"clusters: {clustering.n_clusters}")
    click.echo(f"noise fraction: {pio.fmt(clustering.noise_fraction())}")
    click.echo(f"cut: {pio.fmt(clustering.cut)}")


@main.command(name="export-leaf-tree")
@_with_common
def export_leaf_tree(input_path, forest_path, weights_path, metric, k,
                     min_cluster_size, measure, top_layers, threads, output_dir):
    """Write the leaf tree (and condensed tree) without selecting clusters."""
    _set_threads(threads)
    try:
        points, forest, weights = _load_inputs(input_path, forest_path, weights_path)
        result = _run_fit(points, forest, weights, metric, k, min_cluster_size,
                          measure, top_layers)
    except (pio.InputError, ValueError) as exc:
        raise click.ClickException(str(exc))
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    pio.write_leaf_tree_csv(out / "leaf_tree.csv", result.tree)
    pio.write_condensed_csv(out / "condensed_tree.csv", result.condensed)
    click.echo(f"segments: {result.tree.n_segments}")


@main.command(name="verify")
@_with_common
def verify_cmd(input_path, forest_path, weights_path, metric, k, min_cluster_size,
               measure, top_layers, threads, output_dir):
    """Cross-check this input against the brute-force oracles."""
    _set_threads(threads)
    if weights_path:
        raise click.UsageError("verify requires unit weights")
    try:
        points, forest, _ = _load_inputs(input_path, forest_path, None)
        ok, report = verify.run_verification(
            points=points, forest=forest, metric=metric, k=k,
            min_cluster_size=min_cluster_size,
        )
    except (pio.InputError, ValueError) as exc:
        raise click.ClickException(str(exc))
    for line in report:
        click.echo(line)
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
