/**
 * Strict reader for the simulator's CSV dialect: comma-separated, '.' decimal,
 * one header row, LF line endings, no quoting. Every deviation is reported
 * with the file, line, and column it occurred in, because a silently skipped
 * or coerced cell would defeat the "plotted values equal CSV values" contract.
 */

export class CsvError extends Error {
  constructor(
    readonly file: string,
    message: string,
    readonly line?: number,
  ) {
    super(line === undefined ? `${file}: ${message}` : `${file}:${line}: ${message}`);
    this.name = "CsvError";
  }
}

export interface CsvTable {
  /** Column names from the header row, in file order. */
  readonly columns: readonly string[];
  /** Raw cell text, exactly as it appeared in the file. rows[i][j] pairs with columns[j]. */
  readonly cells: readonly (readonly string[])[];
  readonly file: string;
}

const NUMBER_TOKEN = /^-?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$/;

export function parseCsv(text: string, file: string): CsvTable {
  if (text.length === 0) {
    throw new CsvError(file, "file is empty (expected a header row)");
  }
  if (text.includes("\r")) {
    throw new CsvError(file, "carriage return found; the dialect is LF-only");
  }
  const body = text.endsWith("\n") ? text.slice(0, -1) : text;
  const lines = body.split("\n");
  const header = lines[0];
  if (header === undefined || header.trim() === "") {
    throw new CsvError(file, "header row is empty", 1);
  }
  const columns = header.split(",").map((c) => c.trim());
  const seen = new Set<string>();
  for (const c of columns) {
    if (c === "") throw new CsvError(file, "header has an empty column name", 1);
    if (seen.has(c)) throw new CsvError(file, `duplicate column ${JSON.stringify(c)}`, 1);
    seen.add(c);
  }
  const cells: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i]!;
    if (line === "") {
      throw new CsvError(file, "blank line inside the table", i + 1);
    }
    const row = line.split(",");
    if (row.length !== columns.length) {
      throw new CsvError(
        file,
        `expected ${columns.length} fields (${columns.join(", ")}), found ${row.length}`,
        i + 1,
      );
    }
    cells.push(row);
  }
  if (cells.length === 0) {
    throw new CsvError(file, "no data rows after the header");
  }
  return { columns, cells, file };
}

/** Index of a required column, with a diagnostic listing what the file does have. */
export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      table.file,
      `missing column ${JSON.stringify(name)}; file has: ${table.columns.join(", ")}`,
    );
  }
  return idx;
}

/** Raw string tokens of one column (exact file text, for the identity contract). */
export function columnText(table: CsvTable, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.cells.map((row) => row[idx]!);
}

/** Numeric view of one column; rejects anything the strict dialect disallows. */
export function columnNumbers(table: CsvTable, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.cells.map((row, i) => {
    const token = row[idx]!;
    if (!NUMBER_TOKEN.test(token)) {
      throw new CsvError(
        table.file,
        `column ${JSON.stringify(name)}: ${JSON.stringify(token)} is not a plain decimal number`,
        i + 2,
      );
    }
    return Number(token);
  });
}

/**
 * A measured curve: ordinate `value` with half-width bands on an abscissa
 * column named `x` or `s`. The raw tokens ride along so renderers can embed
 * the file's exact text.
 */
export interface Curve {
  readonly file: string;
  readonly abscissaName: "x" | "s";
  readonly abscissa: readonly number[];
  readonly value: readonly number[];
  readonly halfWidth: readonly number[];
  readonly abscissaText: readonly string[];
  readonly valueText: readonly string[];
  readonly n: number;
}

export function parseCurve(text: string, file: string): Curve {
  const table = parseCsv(text, file);
  const abscissaName = table.columns.includes("x") ? "x" : "s";
  if (!table.columns.includes(abscissaName)) {
    throw new CsvError(
      file,
      `expected an "x" or "s" abscissa column; file has: ${table.columns.join(", ")}`,
    );
  }
  const abscissa = columnNumbers(table, abscissaName);
  const value = columnNumbers(table, "value");
  const halfWidth = columnNumbers(table, "half_width");
  const nColumn = columnNumbers(table, "n");
  for (let i = 1; i < abscissa.length; i++) {
    if (!(abscissa[i]! > abscissa[i - 1]!)) {
      throw new CsvError(file, `${abscissaName} must be strictly increasing`, i + 2);
    }
  }
  const n = nColumn[0]!;
  if (!nColumn.every((v) => v === n)) {
    throw new CsvError(file, 'column "n" must be constant over the curve');
  }
  return {
    file,
    abscissaName,
    abscissa,
    value,
    halfWidth,
    abscissaText: columnText(table, abscissaName),
    valueText: columnText(table, "value"),
    n,
  };
}

export interface CapacityRow {
  readonly noiseW: number;
  readonly scenario: string;
  readonly capacity: number;
  readonly halfWidth: number;
  readonly n: number;
  readonly capacityText: string;
  readonly halfWidthText: string;
  readonly noiseWText: string;
}

export function parseCapacity(text: string, file: string): CapacityRow[] {
  const table = parseCsv(text, file);
  const noiseW = columnNumbers(table, "noise_w");
  const scenario = columnText(table, "scenario");
  const capacity = columnNumbers(table, "capacity");
  const halfWidth = columnNumbers(table, "half_width");
  const n = columnNumbers(table, "n");
  const capacityText = columnText(table, "capacity");
  const halfWidthText = columnText(table, "half_width");
  const noiseWText = columnText(table, "noise_w");
  return noiseW.map((w, i) => ({
    noiseW: w,
    scenario: scenario[i]!,
    capacity: capacity[i]!,
    halfWidth: halfWidth[i]!,
    n: n[i]!,
    capacityText: capacityText[i]!,
    halfWidthText: halfWidthText[i]!,
    noiseWText: noiseWText[i]!,
  }));
}
