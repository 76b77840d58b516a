/** Readers for the CSV files the plscan CLI writes.
 *
 * Every file is plain comma-separated text with a fixed header and no
 * quoting, so the parsers here only split, check the header, and convert
 * columns into flat typed arrays.
 */

export interface LabelColumns {
    labels: Int32Array;
    probabilities: Float64Array;
}

export interface TraceColumns {
    breakpoints: Float64Array;
    totals: Float64Array;
}

export interface LayerColumns {
    cuts: Float64Array;
    totals: Float64Array;
}

export interface LeafTreeColumns {
    parent: Int32Array;
    dMin: Float64Array;
    dMax: Float64Array;
    sMin: Float64Array;
    sMax: Float64Array;
}

function rows(text: string, path: string, header: string): string[][] {
    const lines = text.split("\n").filter((line) => line.length > 0);
    if (lines[0] !== header) {
        throw new Error(`${path}: expected header '${header}', got '${lines[0] ?? ""}'`);
    }
    const width = header.split(",").length;
    return lines.slice(1).map((line, i) => {
        const fields = line.split(",");
        if (fields.length !== width) {
            throw new Error(`${path}:${i + 2}: expected ${width} columns, got ${fields.length}`);
        }
        return fields;
    });
}

function toInt(field: string, path: string): number {
    const value = Number(field);
    if (!Number.isInteger(value)) {
        throw new Error(`${path}: expected integer, got '${field}'`);
    }
    return value;
}

function toFloat(field: string, path: string): number {
    const value = Number(field);
    if (Number.isNaN(value) || field.trim() === "") {
        throw new Error(`${path}: expected number, got '${field}'`);
    }
    return value;
}

/** Parse labels.csv / layer_<rank>.csv (columns point,label,probability). */
export function parseLabels(text: string, path = "labels.csv"): LabelColumns {
    const data = rows(text, path, "point,label,probability");
    const labels = new Int32Array(data.length);
    const probabilities = new Float64Array(data.length);
    data.forEach((fields, i) => {
        if (toInt(fields[0]!, path) !== i) {
            throw new Error(`${path}: point ids must be 0..n-1 in order`);
        }
        labels[i] = toInt(fields[1]!, path);
        probabilities[i] = toFloat(fields[2]!, path);
    });
    return { labels, probabilities };
}

/** Parse trace.csv (columns min_size,total_persistence). */
export function parseTrace(text: string, path = "trace.csv"): TraceColumns {
    const data = rows(text, path, "min_size,total_persistence");
    const breakpoints = new Float64Array(data.length);
    const totals = new Float64Array(data.length);
    data.forEach((fields, i) => {
        breakpoints[i] = toFloat(fields[0]!, path);
        totals[i] = toFloat(fields[1]!, path);
    });
    return { breakpoints, totals };
}

/** Parse layers.csv (columns rank,cut,total_persistence). */
export function parseLayers(text: string, path = "layers.csv"): LayerColumns {
    const data = rows(text, path, "rank,cut,total_persistence");
    const cuts = new Float64Array(data.length);
    const totals = new Float64Array(data.length);
    data.forEach((fields, i) => {
        if (toInt(fields[0]!, path) !== i + 1) {
            throw new Error(`${path}: ranks must be 1..n in order`);
        }
        cuts[i] = toFloat(fields[1]!, path);
        totals[i] = toFloat(fields[2]!, path);
    });
    return { cuts, totals };
}

/** Parse leaf_tree.csv (columns segment,parent,d_min,d_max,s_min,s_max). */
export function parseLeafTree(text: string, path = "leaf_tree.csv"): LeafTreeColumns {
    const data = rows(text, path, "segment,parent,d_min,d_max,s_min,s_max");
    const parent = new Int32Array(data.length);
    const dMin = new Float64Array(data.length);
    const dMax = new Float64Array(data.length);
    const sMin = new Float64Array(data.length);
    const sMax = new Float64Array(data.length);
    data.forEach((fields, i) => {
        if (toInt(fields[0]!, path) !== i) {
            throw new Error(`${path}: segment ids must be 0..n-1 in order`);
        }
        parent[i] = toInt(fields[1]!, path);
        dMin[i] = toFloat(fields[2]!, path);
        dMax[i] = toFloat(fields[3]!, path);
        sMin[i] = toFloat(fields[4]!, path);
        sMax[i] = toFloat(fields[5]!, path);
    });
    return { parent, dMin, dMax, sMin, sMax };
}

/** Serialize a points matrix the way the CLI expects: one row per point.
 *
 * Plain `String(value)` is the shortest decimal that round-trips the
 * float64 exactly, so no precision is lost across the boundary.
 */
export function pointsToCsv(points: ReadonlyArray<ReadonlyArray<number>>): string {
    if (points.length === 0) {
        throw new Error("points must contain at least one row");
    }
    const width = points[0]!.length;
    const lines = points.map((row, i) => {
        if (row.length !== width) {
            throw new Error(`points row ${i}: expected ${width} columns, got ${row.length}`);
        }
        return row.map((value) => {
            if (typeof value !== "number" || Number.isNaN(value)) {
                throw new Error(`points row ${i}: non-numeric value`);
            }
            return String(value);
        }).join(",");
    });
    return lines.join("\n") + "\n";
}

/** Serialize sample weights, one per line. */
export function weightsToCsv(weights: ReadonlyArray<number>): string {
    return weights.map((value) => String(value)).join("\n") + "\n";
}
