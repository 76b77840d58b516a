import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, describe, expect, it } from "vitest";

import { FitResult, fit, pointsToCsv, weightsToCsv } from "../src/index.js";
import { blobs } from "./datasets.js";

const tempDirs: string[] = [];

afterAll(() => {
    for (const dir of tempDirs) {
        rmSync(dir, { recursive: true, force: true });
    }
});

/** Run the CLI directly and return the output directory with its files. */
function runCliFit(points: number[][], extraArgs: string[] = [], weights?: number[]): string {
    const dir = mkdtempSync(join(tmpdir(), "plscan-cli-"));
    tempDirs.push(dir);
    const inputPath = join(dir, "points.csv");
    writeFileSync(inputPath, pointsToCsv(points), "utf-8");
    const outDir = join(dir, "out");
    const args = ["fit", "--input", inputPath, "-o", outDir, ...extraArgs];
    if (weights) {
        const weightsPath = join(dir, "weights.csv");
        writeFileSync(weightsPath, weightsToCsv(weights), "utf-8");
        args.push("--weights", weightsPath);
    }
    const proc = spawnSync("plscan", args, { encoding: "utf-8" });
    expect(proc.status, proc.stderr).toBe(0);
    return outDir;
}

/** Read a CLI CSV and return its numeric cells, row-major, header dropped. */
function fileCells(outDir: string, file: string): number[][] {
    const text = readFileSync(join(outDir, file), "utf-8");
    return text
        .split("\n")
        .filter((line) => line.length > 0)
        .slice(1)
        .map((line) => line.split(",").map(Number));
}

function column(cells: number[][], index: number): number[] {
    return cells.map((row) => row[index]!);
}

function expectLabelsMatchFile(
    labels: Int32Array,
    probabilities: Float64Array,
    outDir: string,
    file: string,
): void {
    const cells = fileCells(outDir, file);
    expect(Array.from(labels)).toEqual(column(cells, 1));
    expect(Array.from(probabilities)).toEqual(column(cells, 2));
}

/** Every FitResult array must equal the CLI file values element-for-element. */
function expectParity(result: FitResult, outDir: string): void {
    expectLabelsMatchFile(result.labels, result.probabilities, outDir, "labels.csv");

    const trace = fileCells(outDir, "trace.csv");
    expect(Array.from(result.traceBreakpoints)).toEqual(column(trace, 0));
    expect(Array.from(result.traceTotals)).toEqual(column(trace, 1));

    const layers = fileCells(outDir, "layers.csv");
    expect(Array.from(result.layerCuts)).toEqual(column(layers, 1));
    expect(Array.from(result.layerTotals)).toEqual(column(layers, 2));

    const tree = fileCells(outDir, "leaf_tree.csv");
    expect(Array.from(result.leafTree.parent)).toEqual(column(tree, 1));
    expect(Array.from(result.leafTree.dMin)).toEqual(column(tree, 2));
    expect(Array.from(result.leafTree.dMax)).toEqual(column(tree, 3));
    expect(Array.from(result.leafTree.sMin)).toEqual(column(tree, 4));
    expect(Array.from(result.leafTree.sMax)).toEqual(column(tree, 5));

    expect(result.layers.length).toBe(result.layerCuts.length);
    result.layers.forEach((layer, i) => {
        expectLabelsMatchFile(layer.labels, layer.probabilities, outDir, `layer_${i + 1}.csv`);
    });
}

describe("fit", () => {
    it("matches the CLI output files element-for-element on a blob fixture", () => {
        const points = blobs(300, 3, 12345);
        const result = fit(points, { k: 4, measure: "size" });
        const outDir = runCliFit(points, ["-k", "4", "--measure", "size"]);
        expectParity(result, outDir);

        const clusters = new Set(Array.from(result.labels).filter((label) => label >= 0));
        expect(clusters.size).toBe(3);
        console.log(
            `PASS bindings parity: ${result.labels.length} points, ` +
            `${clusters.size} clusters, all arrays equal CLI files`,
        );
    }, 120_000);

    it("matches the CLI for weighted samples", () => {
        const points = blobs(120, 2, 777);
        const weights = points.map((_, i) => 1.0 + (i % 4) * 0.5);
        const result = fit(points, { k: 3, sampleWeights: weights });
        const outDir = runCliFit(points, ["-k", "3"], weights);
        expectParity(result, outDir);
    }, 120_000);

    it("forwards measure, metric and min-cluster-size options", () => {
        const points = blobs(150, 3, 99);
        const result = fit(points, {
            k: 5,
            measure: "size_d",
            metric: "euclidean",
            minClusterSize: 8,
            topLayers: 2,
        });
        const outDir = runCliFit(points, [
            "-k", "5", "--measure", "size_d", "--metric", "euclidean",
            "--min-cluster-size", "8", "--top-layers", "2",
        ]);
        expectParity(result, outDir);
        expect(result.layerCuts.length).toBeLessThanOrEqual(2);
    }, 120_000);

    it("surfaces the CLI error text for an out-of-range k", () => {
        const points = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        expect(() => fit(points, { k: 4 })).toThrow(/k=4 must be at most n-1=2/);
    }, 60_000);

    it("rejects an unknown executable with a clear error", () => {
        expect(() =>
            fit([[0, 0], [1, 1]], { k: 1, executable: "plscan-does-not-exist" }),
        ).toThrow(/failed to run/);
    });
});
