import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  CsvError,
  columnNumbers,
  columnText,
  parseCapacity,
  parseCsv,
  parseCurve,
} from "../src/csv.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

const read = (rel: string) => readFileSync(join(FIXTURES, rel), "utf8");

describe("parseCsv", () => {
  it("reads a well-formed table with exact cell text", () => {
    const table = parseCsv("x,value\n1.5,0.25\n2.0,0.50\n", "t.csv");
    expect(table.columns).toEqual(["x", "value"]);
    expect(table.cells).toEqual([
      ["1.5", "0.25"],
      ["2.0", "0.50"],
    ]);
    expect(columnText(table, "value")).toEqual(["0.25", "0.50"]);
    expect(columnNumbers(table, "x")).toEqual([1.5, 2]);
  });

  it("rejects an empty file", () => {
    expect(() => parseCsv("", "empty.csv")).toThrowError(/empty\.csv: file is empty/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("x,value\n", "h.csv")).toThrowError(/no data rows/);
  });

  it("rejects carriage returns", () => {
    expect(() => parseCsv("x,value\r\n1,2\r\n", "crlf.csv")).toThrowError(/LF-only/);
  });

  it("rejects a short row with its line number", () => {
    expect(() => parseCsv("x,value,n\n1,2,3\n4,5\n", "short.csv")).toThrowError(
      /short\.csv:3: expected 3 fields \(x, value, n\), found 2/,
    );
  });

  it("rejects blank interior lines", () => {
    expect(() => parseCsv("x\n1\n\n2\n", "blank.csv")).toThrowError(/blank\.csv:3: blank line/);
  });

  it("rejects duplicate column names", () => {
    expect(() => parseCsv("x,x\n1,2\n", "dup.csv")).toThrowError(/duplicate column "x"/);
  });

  it("names missing columns and lists what is present", () => {
    const table = parseCsv("x,val\n1,2\n", "cols.csv");
    expect(() => columnNumbers(table, "value")).toThrowError(
      /missing column "value"; file has: x, val/,
    );
  });

  it("rejects non-numeric cells with file, line, and column", () => {
    const table = parseCsv("x,value\n1,two\n", "nan.csv");
    expect(() => columnNumbers(table, "value")).toThrowError(
      /nan\.csv:2: column "value": "two" is not a plain decimal number/,
    );
  });

  it("accepts scientific notation and leading dots", () => {
    const table = parseCsv("v\n1e-3\n-.5\n2.5E+2\n", "sci.csv");
    expect(columnNumbers(table, "v")).toEqual([0.001, -0.5, 250]);
  });
});

describe("parseCurve", () => {
  it("reads the x-abscissa curve dialect from simulator output", () => {
    const curve = parseCurve(read("fig2/interference_cdf_a.csv"), "interference_cdf_a.csv");
    expect(curve.abscissaName).toBe("x");
    expect(curve.abscissa.length).toBe(60);
    expect(curve.value.length).toBe(60);
    expect(curve.n).toBe(2000);
    expect(curve.valueText.length).toBe(60);
  });

  it("reads the s-abscissa transform dialect", () => {
    const curve = parseCurve(read("fig2/lt_a.csv"), "lt_a.csv");
    expect(curve.abscissaName).toBe("s");
    expect(curve.abscissa[0]).toBeCloseTo(0.01, 12);
    expect(curve.value.every((v) => v > 0 && v <= 1)).toBe(true);
  });

  it("demands a strictly increasing abscissa", () => {
    expect(() => parseCurve("x,value,half_width,n\n2,0,0,5\n1,1,0,5\n", "dec.csv")).toThrowError(
      /dec\.csv:3: x must be strictly increasing/,
    );
  });

  it("demands a constant n column", () => {
    expect(() =>
      parseCurve("x,value,half_width,n\n1,0,0,5\n2,1,0,6\n", "vn.csv"),
    ).toThrowError(/"n" must be constant/);
  });

  it("reports the abscissa alternatives when both are absent", () => {
    expect(() => parseCurve("t,value,half_width,n\n1,0,0,5\n", "t.csv")).toThrowError(
      /expected an "x" or "s" abscissa column/,
    );
  });
});

describe("parseCapacity", () => {
  it("round-trips the capacity fixture tokens", () => {
    const text = read("table2/capacity.csv");
    const rows = parseCapacity(text, "capacity.csv");
    expect(rows.length).toBe(6);
    expect(rows.map((r) => r.scenario)).toEqual(["a", "b", "a", "b", "a", "b"]);
    for (const row of rows) {
      expect(text).toContain(row.capacityText);
      expect(text).toContain(row.halfWidthText);
      expect(Number(row.capacityText)).toBe(row.capacity);
    }
  });

  it("is a CsvError when the scenario column is missing", () => {
    expect(() => parseCapacity("noise_w,cap\n1,2\n", "c.csv")).toThrowError(CsvError);
  });
});
