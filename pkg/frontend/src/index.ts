/** Thin bindings around the `plscan` command line interface.
 *
 * `fit` writes the input to a temporary directory, runs `plscan fit`,
 * and reads the result files back into flat typed arrays. All clustering
 * logic lives in the CLI; this module only moves data across the process
 * boundary (arrays are copied, never shared).
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import {
    LabelColumns,
    LayerColumns,
    LeafTreeColumns,
    TraceColumns,
    parseLabels,
    parseLayers,
    parseLeafTree,
    parseTrace,
    pointsToCsv,
    weightsToCsv,
} from "./csv.js";

export type {
    LabelColumns,
    LayerColumns,
    LeafTreeColumns,
    TraceColumns,
} from "./csv.js";
export {
    parseLabels,
    parseLayers,
    parseLeafTree,
    parseTrace,
    pointsToCsv,
    weightsToCsv,
} from "./csv.js";

export type Measure = "size" | "d" | "lambda" | "size_d" | "size_lambda";
export type Metric = "euclidean" | "cosine";

export interface FitOptions {
    /** Number of neighbours for core distances (CLI -k, default 4). */
    k?: number;
    /** Persistence measure (CLI --measure, default "size"). */
    measure?: Measure;
    /** Distance metric (CLI --metric, default "euclidean"). */
    metric?: Metric;
    /** Initial minimum cluster size (CLI --min-cluster-size). */
    minClusterSize?: number;
    /** Positive per-point sample weights (CLI --weights). */
    sampleWeights?: ReadonlyArray<number>;
    /** How many trace maxima to report (CLI --top-layers, default 5). */
    topLayers?: number;
    /** Path to the plscan executable (default "plscan", or $PLSCAN_BIN). */
    executable?: string;
}

export interface FitResult {
    /** Per-point cluster ids; -1 marks noise. */
    labels: Int32Array;
    /** Per-point membership strength in [0, 1]. */
    probabilities: Float64Array;
    /** Persistence-trace size breakpoints. */
    traceBreakpoints: Float64Array;
    /** Total persistence at each breakpoint. */
    traceTotals: Float64Array;
    /** Size cuts of the detected layers, best first. */
    layerCuts: Float64Array;
    /** Total persistence of each layer. */
    layerTotals: Float64Array;
    /** Leaf-tree columns; index 0 is the phantom root. */
    leafTree: LeafTreeColumns;
    /** Labels and probabilities of each reported layer, best first. */
    layers: LabelColumns[];
}

function runCli(executable: string, args: string[]): void {
    const proc = spawnSync(executable, args, { encoding: "utf-8" });
    if (proc.error) {
        throw new Error(`failed to run ${executable}: ${proc.error.message}`);
    }
    if (proc.status !== 0) {
        const detail = (proc.stderr || proc.stdout || "").trim();
        throw new Error(detail || `${executable} exited with status ${proc.status}`);
    }
}

function readText(dir: string, file: string): string {
    return readFileSync(join(dir, file), "utf-8");
}

/** Cluster a points matrix by running `plscan fit` and parsing its output. */
export function fit(
    points: ReadonlyArray<ReadonlyArray<number>>,
    options: FitOptions = {},
): FitResult {
    const executable = options.executable ?? process.env["PLSCAN_BIN"] ?? "plscan";
    const workDir = mkdtempSync(join(tmpdir(), "plscan-"));
    try {
        const inputPath = join(workDir, "points.csv");
        writeFileSync(inputPath, pointsToCsv(points), "utf-8");
        const outDir = join(workDir, "out");
        const args = ["fit", "--input", inputPath, "-o", outDir];
        if (options.k !== undefined) {
            args.push("-k", String(options.k));
        }
        if (options.measure !== undefined) {
            args.push("--measure", options.measure);
        }
        if (options.metric !== undefined) {
            args.push("--metric", options.metric);
        }
        if (options.minClusterSize !== undefined) {
            args.push("--min-cluster-size", String(options.minClusterSize));
        }
        if (options.topLayers !== undefined) {
            args.push("--top-layers", String(options.topLayers));
        }
        if (options.sampleWeights !== undefined) {
            const weightsPath = join(workDir, "weights.csv");
            writeFileSync(weightsPath, weightsToCsv(options.sampleWeights), "utf-8");
            args.push("--weights", weightsPath);
        }
        runCli(executable, args);

        const { labels, probabilities } = parseLabels(readText(outDir, "labels.csv"));
        const trace: TraceColumns = parseTrace(readText(outDir, "trace.csv"));
        const layerIndex: LayerColumns = parseLayers(readText(outDir, "layers.csv"));
        const leafTree = parseLeafTree(readText(outDir, "leaf_tree.csv"));
        const layers: LabelColumns[] = [];
        for (let rank = 1; rank <= layerIndex.cuts.length; rank++) {
            const file = `layer_${rank}.csv`;
            layers.push(parseLabels(readText(outDir, file), file));
        }
        return {
            labels,
            probabilities,
            traceBreakpoints: trace.breakpoints,
            traceTotals: trace.totals,
            layerCuts: layerIndex.cuts,
            layerTotals: layerIndex.totals,
            leafTree,
            layers,
        };
    } finally {
        rmSync(workDir, { recursive: true, force: true });
    }
}
