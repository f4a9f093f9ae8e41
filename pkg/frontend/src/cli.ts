#!/usr/bin/env node
/**
 * `interord-figures render <plotspec.json>` — turn simulator CSV artifacts
 * into an SVG figure or a markdown table.
 *
 * Input paths inside the plot spec are resolved relative to the file's
 * directory. All inputs are read and the whole output is rendered in memory
 * before anything touches the output path (temp file + rename), so a failed
 * run never leaves a partial file behind.
 *
 * Exit codes: 0 success; 1 input data rejected (CSV schema/content); 2 usage,
 * spec, or filesystem errors.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import * as process from "node:process";

import { CsvError, parseCapacity, parseCurve } from "./csv.js";
import { PlotSpecError, parsePlotSpec, type Panel } from "./plotspec.js";
import { LoadedPanel, RenderError, renderCapacityTable, renderFigure } from "./render.js";

const USAGE = `usage: interord-figures render <plotspec.json>

Plot kinds (the "kind" field of the plot spec):
  cdf_pair        1-2 panels of empirical CDF pairs with confidence bands;
                  optional crossing annotation per panel
  lt_pair         one panel of Laplace-transform curves with bands
  capacity_table  markdown table of capacity +/- half-width per noise level

Each panel names two curve CSVs (columns x|s,value,half_width,n); the
capacity table reads capacity.csv (noise_w,scenario,capacity,half_width,n).
`;

function fail(message: string, code: number): never {
  process.stderr.write(`interord-figures: ${message}\n`);
  process.exit(code);
}

function readText(file: string): string {
  try {
    return fs.readFileSync(file, "utf8");
  } catch (err) {
    fail(`cannot read ${file}: ${(err as NodeJS.ErrnoException).code ?? err}`, 2);
  }
}

function loadPanel(panel: Panel, baseDir: string): LoadedPanel {
  const aPath = path.resolve(baseDir, panel.a);
  const bPath = path.resolve(baseDir, panel.b);
  return {
    panel,
    a: parseCurve(readText(aPath), panel.a),
    b: parseCurve(readText(bPath), panel.b),
  };
}

function atomicWrite(outPath: string, content: string): void {
  fs.mkdirSync(path.dirname(outPath), { recursive: true });
  const tmp = `${outPath}.tmp-${process.pid}`;
  fs.writeFileSync(tmp, content, "utf8");
  fs.renameSync(tmp, outPath);
}

export function main(argv: string[]): void {
  if (argv.includes("--help") || argv.includes("-h")) {
    process.stdout.write(USAGE);
    process.exit(0);
  }
  if (argv.length !== 2 || argv[0] !== "render") {
    fail(`expected exactly: render <plotspec.json>\n\n${USAGE}`, 2);
  }
  const specPath = argv[1]!;
  const spec = parsePlotSpec(readText(specPath), specPath);
  const baseDir = path.dirname(path.resolve(specPath));
  const outPath = path.resolve(baseDir, spec.out);

  let content: string;
  if (spec.kind === "capacity_table") {
    const inPath = path.resolve(baseDir, spec.input);
    content = renderCapacityTable(parseCapacity(readText(inPath), spec.input), spec.title);
  } else if (spec.kind === "cdf_pair") {
    content = renderFigure(
      "cdf_pair",
      spec.panels.map((panel) => loadPanel(panel, baseDir)),
    );
  } else {
    content = renderFigure("lt_pair", [loadPanel(spec.panel, baseDir)]);
  }
  atomicWrite(outPath, content);
  process.stdout.write(`${outPath}\n`);
}

function invokedDirectly(): boolean {
  const entry = process.argv[1];
  if (entry === undefined) return false;
  try {
    const self = fs.realpathSync(new URL(import.meta.url));
    return fs.realpathSync(path.resolve(entry)) === self;
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  try {
    main(process.argv.slice(2));
  } catch (err) {
    if (err instanceof CsvError || err instanceof RenderError) {
      fail(err.message, 1);
    }
    if (err instanceof PlotSpecError) {
      fail(err.message, 2);
    }
    throw err;
  }
}
