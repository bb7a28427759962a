/** Minimal deterministic SVG line charts: same input, same bytes. */

export interface Series {
  label: string;
  color: string;
  x: number[];
  y: number[];
  dash?: string;
  width?: number;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const W = 860;
const H = 520;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  const rounded = Math.round(v * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(v);
  }
  return ticks;
}

/** Render a line chart to an SVG string; empty series give empty axes. */
export function renderChart(spec: ChartSpec): string {
  const xs = spec.series.flatMap((s) => s.x).filter(Number.isFinite);
  const ys = spec.series.flatMap((s) => s.y).filter(Number.isFinite);
  const xMin = xs.length ? Math.min(...xs) : 0;
  const xMax = xs.length ? Math.max(...xs) : 1;
  const yMin = 0;
  const yMax = ys.length ? Math.max(...ys) * 1.05 : 1;

  const plotW = W - MARGIN.left - MARGIN.right;
  const plotH = H - MARGIN.top - MARGIN.bottom;
  const px = (x: number) =>
    MARGIN.left + ((x - xMin) / (xMax - xMin || 1)) * plotW;
  const py = (y: number) =>
    MARGIN.top + plotH - ((y - yMin) / (yMax - yMin || 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
    `viewBox="0 0 ${W} ${H}" font-family="sans-serif">`);
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="24" text-anchor="middle" font-size="16">` +
    `${esc(spec.title)}</text>`);

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="#333"/>`);
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" stroke="#333"/>`);
  for (const t of niceTicks(xMin, xMax, 8)) {
    const x = px(t);
    parts.push(`<line x1="${fmt(x)}" y1="${y0}" x2="${fmt(x)}" y2="${y0 + 5}" stroke="#333"/>`);
    parts.push(
      `<text x="${fmt(x)}" y="${y0 + 20}" text-anchor="middle" font-size="11">` +
      `${fmt(t)}</text>`);
  }
  for (const t of niceTicks(yMin, yMax, 8)) {
    const y = py(t);
    parts.push(`<line x1="${x0 - 5}" y1="${fmt(y)}" x2="${x0}" y2="${fmt(y)}" stroke="#333"/>`);
    parts.push(`<line x1="${x0}" y1="${fmt(y)}" x2="${x0 + plotW}" y2="${fmt(y)}" stroke="#eee"/>`);
    parts.push(
      `<text x="${x0 - 9}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">` +
      `${fmt(t)}</text>`);
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${H - 14}" text-anchor="middle" ` +
    `font-size="13">${esc(spec.xLabel)}</text>`);
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
    `font-size="13" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">` +
    `${esc(spec.yLabel)}</text>`);

  // series
  for (const s of spec.series) {
    const pts = s.x
      .map((x, i) => [x, s.y[i]] as const)
      .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y))
      .map(([x, y]) => `${fmt(px(x))},${fmt(py(y))}`)
      .join(" ");
    if (pts.length > 0) {
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      parts.push(
        `<polyline points="${pts}" fill="none" stroke="${s.color}" ` +
        `stroke-width="${s.width ?? 1.6}"${dash}/>`);
    }
  }

  // legend
  spec.series.forEach((s, i) => {
    const lx = MARGIN.left + 16;
    const ly = MARGIN.top + 14 + i * 18;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" ` +
      `stroke="${s.color}" stroke-width="2"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`);
    parts.push(
      `<text x="${lx + 32}" y="${ly + 4}" font-size="12">${esc(s.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
