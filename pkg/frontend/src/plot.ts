#!/usr/bin/env node
/**
 * Render a figure from a gtlab sweep CSV.
 *
 * Usage:
 *   node dist/plot.js --csv sweep.csv --kind {bounds,comparison} --out fig.svg
 *
 * Exit codes: 0 rendered; 1 schema/usage/io error; 2 rendered but the
 * file held no data rows (empty axes).  Validation findings (points
 * outside their bounds) warn on stderr without failing, so exploratory
 * data still plots.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { renderChart } from "./chart.js";
import { buildFigure, FigureKind } from "./figures.js";
import { parseCsv, SchemaError } from "./schema.js";

interface Args {
  csv: string;
  kind: FigureKind;
  out: string;
  title?: string;
}

function parseArgs(argv: string[]): Args {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`cannot parse arguments near ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const csv = values.get("csv");
  const kind = values.get("kind");
  const out = values.get("out");
  if (!csv || !kind || !out) {
    throw new Error("required: --csv <path> --kind {bounds,comparison} --out <img>");
  }
  if (kind !== "bounds" && kind !== "comparison") {
    throw new Error(`unknown kind ${kind}; expected bounds or comparison`);
  }
  if (!out.endsWith(".svg")) {
    throw new Error(`only vector .svg output is supported, got ${out}`);
  }
  return { csv, kind, out, title: values.get("title") };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`plot: ${(err as Error).message}`);
    return 1;
  }
  let svg: string;
  let empty = false;
  const warnings: string[] = [];
  try {
    const rows = parseCsv(readFileSync(args.csv, "utf-8"));
    if (rows.length === 0) {
      empty = true;
      warnings.push("no data rows: rendering empty axes");
    }
    const figure = buildFigure(args.kind, rows, args.title);
    warnings.push(...figure.warnings);
    svg = renderChart(figure.spec);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`plot: schema error: ${err.message}`);
    } else {
      console.error(`plot: ${(err as Error).message}`);
    }
    return 1;
  }
  try {
    writeFileSync(args.out, svg, "utf-8");
  } catch (err) {
    console.error(`plot: cannot write ${args.out}: ${(err as Error).message}`);
    return 1;
  }
  for (const w of warnings) {
    console.error(`plot: warning: ${w}`);
  }
  console.log(`wrote ${args.out}`);
  return empty ? 2 : 0;
}

const invokedDirectly = process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
