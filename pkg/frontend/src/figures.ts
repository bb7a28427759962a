/** Figure assembly for the two sweep kinds. */

import { ChartSpec } from "./chart.js";
import { SweepRow } from "./schema.js";

export type FigureKind = "bounds" | "comparison";

export interface FigureResult {
  spec: ChartSpec;
  warnings: string[];
}

const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f4a261", "#7209b7"];

/** Bounds figure: entropy floor, refined-tree mean, and its upper bound
 *  against the expected defective count. */
export function boundsFigure(rows: SweepRow[], title?: string): FigureResult {
  const warnings: string[] = [];
  const refined = rows.filter((r) => r.algorithm === "sfh");
  if (rows.length > 0 && refined.length === 0) {
    warnings.push("no rows for algorithm 'sfh'; bounds figure plots nothing");
  }
  refined.sort((a, b) => a.mu - b.mu);
  for (const r of refined) {
    if (!(r.entropy_lb <= r.mean_tests && r.mean_tests <= r.bound_ours)) {
      warnings.push(
        `point ${r.point}: mean_tests ${r.mean_tests} outside ` +
        `[${r.entropy_lb}, ${r.bound_ours}]`);
    }
  }
  const mu = refined.map((r) => r.mu);
  return {
    spec: {
      title: title ?? "Mean tests and bounds",
      xLabel: "expected defectives (mu)",
      yLabel: "tests",
      series: [
        {
          label: "entropy lower bound",
          color: "#2d6a4f",
          x: mu,
          y: refined.map((r) => r.entropy_lb),
          dash: "6,3",
        },
        {
          label: "mean tests (sfh)",
          color: "#4361ee",
          x: mu,
          y: refined.map((r) => r.mean_tests),
          width: 2,
        },
        {
          label: "upper bound H+3mu+1",
          color: "#e63946",
          x: mu,
          y: refined.map((r) => r.bound_ours),
          dash: "4,4",
        },
      ],
    },
    warnings,
  };
}

/** Comparison figure: one mean-tests curve per strategy in the file. */
export function comparisonFigure(rows: SweepRow[], title?: string): FigureResult {
  const names: string[] = [];
  for (const r of rows) {
    if (!names.includes(r.algorithm)) names.push(r.algorithm);
  }
  const series = names.map((name, i) => {
    const mine = rows.filter((r) => r.algorithm === name)
      .sort((a, b) => a.mu - b.mu);
    return {
      label: name,
      color: PALETTE[i % PALETTE.length],
      x: mine.map((r) => r.mu),
      y: mine.map((r) => r.mean_tests),
      width: 1.8,
    };
  });
  return {
    spec: {
      title: title ?? "Mean tests by strategy",
      xLabel: "expected defectives (mu)",
      yLabel: "tests",
      series,
    },
    warnings: [],
  };
}

export function buildFigure(kind: FigureKind, rows: SweepRow[],
                            title?: string): FigureResult {
  return kind === "bounds" ? boundsFigure(rows, title)
                           : comparisonFigure(rows, title);
}
