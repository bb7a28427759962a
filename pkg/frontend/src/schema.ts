/** Sweep CSV schema: parsing and validation. */

export const CSV_COLUMNS = [
  "point",
  "mu",
  "entropy",
  "algorithm",
  "mean_tests",
  "std_tests",
  "ci95",
  "bound_ours",
  "bound_ours_iid",
  "bound_li",
  "bound_kealy",
  "entropy_lb",
] as const;

export interface SweepRow {
  point: number;
  mu: number;
  entropy: number;
  algorithm: string;
  mean_tests: number;
  std_tests: number;
  ci95: number;
  bound_ours: number;
  bound_ours_iid: number;
  bound_li: number;
  bound_kealy: number;
  entropy_lb: number;
}

export class SchemaError extends Error {}

/**
 * Parse a sweep CSV.  The header must carry every schema column (extra
 * columns are rejected too: the producer writes exactly this schema).
 * Throws SchemaError naming the missing columns otherwise.
 */
export function parseCsv(text: string): SweepRow[] {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: no header row");
  }
  const header = lines[0].split(",");
  const missing = CSV_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing columns: ${missing.join(", ")}`);
  }
  const extra = header.filter((c) => !(CSV_COLUMNS as readonly string[]).includes(c));
  if (extra.length > 0) {
    throw new SchemaError(`unexpected columns: ${extra.join(", ")}`);
  }
  const index = new Map(header.map((name, i) => [name, i]));
  return lines.slice(1).map((line, rowNum) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(`row ${rowNum + 1}: ${cells.length} cells, ` +
        `expected ${header.length}`);
    }
    const num = (name: string): number => Number(cells[index.get(name)!]);
    return {
      point: num("point"),
      mu: num("mu"),
      entropy: num("entropy"),
      algorithm: cells[index.get("algorithm")!],
      mean_tests: num("mean_tests"),
      std_tests: num("std_tests"),
      ci95: num("ci95"),
      bound_ours: num("bound_ours"),
      bound_ours_iid: num("bound_ours_iid"),
      bound_li: num("bound_li"),
      bound_kealy: num("bound_kealy"),
      entropy_lb: num("entropy_lb"),
    };
  });
}
