/** spcsim-plot --in data.csv [--in more.csv] --out figure.svg --kind KIND
 *
 * Kinds: heatmap (matrix CSV), diagonal_crossection (crossection CSV or one
 * or more matrix CSVs whose anti-diagonals are plotted), series (long-format
 * observable CSV).  The title comes from the JSON metadata sidecar next to
 * the first input when present.  Exits nonzero on any schema mismatch.
 */

import { readFileSync, writeFileSync, existsSync } from "node:fs";
import { basename } from "node:path";

import {
  CrossectionData,
  parseCrossectionCsv,
  parseMatrixCsv,
  parseSeriesCsv,
  SchemaMismatch,
} from "./csv.js";
import { crossectionSvg, heatmapSvg, seriesSvg } from "./svg.js";

export interface Args {
  inputs: string[];
  out: string;
  kind: "heatmap" | "diagonal_crossection" | "series";
}

export function parseArgs(argv: string[]): Args {
  const inputs: string[] = [];
  let out: string | null = null;
  let kind: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--in") inputs.push(argv[++i]);
    else if (a === "--out") out = argv[++i];
    else if (a === "--kind") kind = argv[++i];
    else throw new Error(`unknown argument '${a}'`);
  }
  if (inputs.length === 0 || !out || !kind) {
    throw new Error("usage: spcsim-plot --in CSV [--in CSV ...] --out SVG --kind KIND");
  }
  if (!["heatmap", "diagonal_crossection", "series"].includes(kind)) {
    throw new Error(`unknown kind '${kind}'`);
  }
  return { inputs, out, kind: kind as Args["kind"] };
}

function sidecarTitle(csvPath: string): string {
  const sidecar = csvPath.replace(/\.csv$/, ".json");
  if (existsSync(sidecar)) {
    try {
      const meta = JSON.parse(readFileSync(sidecar, "utf-8"));
      const parts = [meta.command,` ${basename(csvPath, ".csv")}`];
      if (meta.delta_over_qmax2 !== undefined) parts.push(` (gap/qmax^2 = ${meta.delta_over_qmax2})`);
      return parts.join("");
    } catch {
      // fall through to the filename title
    }
  }
  return basename(csvPath, ".csv");
}

/** Anti-diagonal of a parsed matrix, as a crossection column. */
function antiDiagonal(values: number[][]): number[] {
  const n = values.length;
  return values.map((row, i) => row[n - 1 - i]);
}

export function render(args: Args): string {
  const first = readFileSync(args.inputs[0], "utf-8");
  const heading = sidecarTitle(args.inputs[0]);
  if (args.kind === "heatmap") {
    if (args.inputs.length !== 1) throw new Error("heatmap takes exactly one --in");
    return heatmapSvg(parseMatrixCsv(first), heading);
  }
  if (args.kind === "series") {
    if (args.inputs.length !== 1) throw new Error("series takes exactly one --in");
    return seriesSvg(parseSeriesCsv(first), heading);
  }
  // diagonal_crossection: either a prepared crossection CSV, or matrices
  if (args.inputs.length === 1 && first.startsWith("index,")) {
    return crossectionSvg(parseCrossectionCsv(first), heading);
  }
  const data: CrossectionData = { columns: [], index: [] };
  for (const path of args.inputs) {
    const matrix = parseMatrixCsv(readFileSync(path, "utf-8"));
    const values = antiDiagonal(matrix.values);
    if (data.index.length === 0) data.index = values.map((_, i) => i);
    if (values.length !== data.index.length) {
      throw new SchemaMismatch(`${path}: matrix size differs from the first input`);
    }
    data.columns.push({ label: basename(path, ".csv"), values });
  }
  return crossectionSvg(data, heading);
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    writeFileSync(args.out, render(args));
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
