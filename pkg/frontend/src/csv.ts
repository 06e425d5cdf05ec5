/** Parsers for the simulator's CSV formats. Strict: a malformed file throws. */

export class SchemaMismatch extends Error {}

export interface MatrixData {
  /** row index labels from the first column */
  rowLabels: string[];
  /** column labels from the header (after the corner cell) */
  colLabels: string[];
  values: number[][];
}

function splitLines(text: string): string[] {
  return text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
}

function parseNumber(cell: string, where: string): number {
  const v = Number(cell);
  if (!Number.isFinite(v)) {
    throw new SchemaMismatch(`${where}: expected a finite number, got '${cell}'`);
  }
  return v;
}

/** Matrix CSV: header "n\k,0,1,..."; one labeled row per matrix row. */
export function parseMatrixCsv(text: string): MatrixData {
  const lines = splitLines(text);
  if (lines.length < 2) throw new SchemaMismatch("matrix CSV needs a header and rows");
  const header = lines[0].split(",");
  if (header.length < 2) throw new SchemaMismatch("matrix CSV header needs index columns");
  const colLabels = header.slice(1);
  const rowLabels: string[] = [];
  const values: number[][] = [];
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatch(
        `matrix row ${i}: ${cells.length} cells, header has ${header.length}`,
      );
    }
    rowLabels.push(cells[0]);
    values.push(cells.slice(1).map((c, j) => parseNumber(c, `matrix row ${i}, col ${j}`)));
  }
  return { rowLabels, colLabels, values };
}

export interface CrossectionData {
  /** one named column of values per gap ratio */
  columns: { label: string; values: number[] }[];
  index: number[];
}

/** Crossection CSV: header "index,delta_a,delta_b,...". */
export function parseCrossectionCsv(text: string): CrossectionData {
  const lines = splitLines(text);
  if (lines.length < 2) throw new SchemaMismatch("crossection CSV needs a header and rows");
  const header = lines[0].split(",");
  if (header[0] !== "index" || header.length < 2) {
    throw new SchemaMismatch("crossection CSV header must start with 'index'");
  }
  const columns = header.slice(1).map((label) => ({ label, values: [] as number[] }));
  const index: number[] = [];
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatch(`crossection row ${i}: wrong cell count`);
    }
    index.push(parseNumber(cells[0], `crossection row ${i}`));
    cells.slice(1).forEach((c, j) => {
      columns[j].values.push(parseNumber(c, `crossection row ${i}, col ${j}`));
    });
  }
  return { columns, index };
}

export interface SeriesData {
  /** per-label time series, times shared */
  labels: Map<string, { tau: number; value: number }[]>;
}

/** Series CSV: header "tau,label,value"; long format. */
export function parseSeriesCsv(text: string): SeriesData {
  const lines = splitLines(text);
  if (lines.length < 2) throw new SchemaMismatch("series CSV needs a header and rows");
  if (lines[0] !== "tau,label,value") {
    throw new SchemaMismatch(`series CSV header must be 'tau,label,value', got '${lines[0]}'`);
  }
  const labels = new Map<string, { tau: number; value: number }[]>();
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== 3) throw new SchemaMismatch(`series row ${i}: wrong cell count`);
    const tau = parseNumber(cells[0], `series row ${i}`);
    const value = parseNumber(cells[2], `series row ${i}`);
    const entry = labels.get(cells[1]) ?? [];
    entry.push({ tau, value });
    labels.set(cells[1], entry);
  }
  return { labels };
}
