import { describe, expect, it } from "vitest";

import {
  parseCrossectionCsv,
  parseMatrixCsv,
  parseSeriesCsv,
  SchemaMismatch,
} from "../src/csv.js";

describe("parseMatrixCsv", () => {
  it("parses header labels and values", () => {
    const data = parseMatrixCsv("n\\k,0,1\n0,1.5,-2.0\n1,0.25,3e-2\n");
    expect(data.colLabels).toEqual(["0", "1"]);
    expect(data.rowLabels).toEqual(["0", "1"]);
    expect(data.values).toEqual([
      [1.5, -2.0],
      [0.25, 0.03],
    ]);
  });

  it("rejects ragged rows", () => {
    expect(() => parseMatrixCsv("n\\k,0,1\n0,1.5\n")).toThrow(SchemaMismatch);
  });

  it("rejects non-numeric cells", () => {
    expect(() => parseMatrixCsv("n\\k,0\n0,oops\n")).toThrow(SchemaMismatch);
  });

  it("rejects empty input", () => {
    expect(() => parseMatrixCsv("")).toThrow(SchemaMismatch);
  });
});

describe("parseCrossectionCsv", () => {
  it("parses one column per gap", () => {
    const data = parseCrossectionCsv("index,delta_0.01,delta_0.05\n0,1.0,2.0\n1,3.0,4.0\n");
    expect(data.index).toEqual([0, 1]);
    expect(data.columns.map((c) => c.label)).toEqual(["delta_0.01", "delta_0.05"]);
    expect(data.columns[1].values).toEqual([2.0, 4.0]);
  });

  it("requires the index header", () => {
    expect(() => parseCrossectionCsv("idx,delta\n0,1\n")).toThrow(SchemaMismatch);
  });
});

describe("parseSeriesCsv", () => {
  it("groups rows by label", () => {
    const data = parseSeriesCsv(
      "tau,label,value\n0.0,n_0,1.0\n0.0,n_1,0.0\n0.5,n_0,0.8\n0.5,n_1,0.2\n",
    );
    expect([...data.labels.keys()].sort()).toEqual(["n_0", "n_1"]);
    expect(data.labels.get("n_0")).toEqual([
      { tau: 0.0, value: 1.0 },
      { tau: 0.5, value: 0.8 },
    ]);
  });

  it("rejects a wrong header", () => {
    expect(() => parseSeriesCsv("time,name,v\n0,a,1\n")).toThrow(SchemaMismatch);
  });
});
