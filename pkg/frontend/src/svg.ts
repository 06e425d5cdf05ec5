/** SVG renderers. Read-only over the parsed data: no numerical processing
 * beyond axis placement and the symmetric color mapping. */

import { CrossectionData, MatrixData, SeriesData } from "./csv.js";
import { divergingColor, symmetricLimit } from "./color.js";

const CELL = 18;
const MARGIN = { top: 48, left: 56, right: 96, bottom: 40 };
const CURVE_COLORS = ["#b2182b", "#2166ac", "#1b7837", "#e08214", "#762a83", "#35978f"];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function svgDoc(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="monospace" font-size="11">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}</svg>\n`
  );
}

function title(text: string, width: number): string {
  return `<text x="${width / 2}" y="20" text-anchor="middle" font-size="13">${esc(text)}</text>\n`;
}

/** Heatmap with mode indices on both axes and a zero-centered diverging scale. */
export function heatmapSvg(data: MatrixData, heading: string): string {
  const n = data.values.length;
  const m = data.values[0]?.length ?? 0;
  const limit = symmetricLimit(data.values) || 1.0;
  const width = MARGIN.left + m * CELL + MARGIN.right;
  const height = MARGIN.top + n * CELL + MARGIN.bottom;
  let body = title(heading, width);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < m; j++) {
      const x = MARGIN.left + j * CELL;
      const y = MARGIN.top + i * CELL;
      const color = divergingColor(data.values[i][j] / limit);
      body += `<rect x="${x}" y="${y}" width="${CELL}" height="${CELL}" fill="${color}"/>\n`;
    }
  }
  const step = Math.max(1, Math.ceil(n / 13));
  for (let i = 0; i < n; i += step) {
    const y = MARGIN.top + i * CELL + CELL / 2 + 4;
    body += `<text x="${MARGIN.left - 6}" y="${y}" text-anchor="end">${esc(data.rowLabels[i])}</text>\n`;
  }
  for (let j = 0; j < m; j += step) {
    const x = MARGIN.left + j * CELL + CELL / 2;
    const y = MARGIN.top + n * CELL + 14;
    body += `<text x="${x}" y="${y}" text-anchor="middle">${esc(data.colLabels[j])}</text>\n`;
  }
  // colorbar
  const cbX = MARGIN.left + m * CELL + 24;
  const cbH = n * CELL;
  const steps = 32;
  for (let s = 0; s < steps; s++) {
    const t = 1 - (2 * s) / (steps - 1);
    const y = MARGIN.top + (s * cbH) / steps;
    body += `<rect x="${cbX}" y="${y}" width="14" height="${cbH / steps + 0.5}" fill="${divergingColor(t)}"/>\n`;
  }
  body += `<text x="${cbX + 18}" y="${MARGIN.top + 8}">+${limit.toExponential(2)}</text>\n`;
  body += `<text x="${cbX + 18}" y="${MARGIN.top + cbH / 2 + 4}">0</text>\n`;
  body += `<text x="${cbX + 18}" y="${MARGIN.top + cbH}">-${limit.toExponential(2)}</text>\n`;
  return svgDoc(width, height, body);
}

interface Curve {
  label: string;
  points: { x: number; y: number }[];
}

function curvesSvg(curves: Curve[], heading: string, xLabel: string): string {
  const width = 560;
  const height = 360;
  const plot = {
    x0: 64,
    y0: 40,
    w: width - 64 - 150,
    h: height - 40 - 48,
  };
  const xs = curves.flatMap((c) => c.points.map((p) => p.x));
  const ys = curves.flatMap((c) => c.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys, 0);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const px = (x: number) => plot.x0 + ((x - xMin) / xSpan) * plot.w;
  const py = (y: number) => plot.y0 + plot.h - ((y - yMin) / ySpan) * plot.h;
  let body = title(heading, width);
  body += `<rect x="${plot.x0}" y="${plot.y0}" width="${plot.w}" height="${plot.h}" fill="none" stroke="#999"/>\n`;
  if (yMin < 0 && yMax > 0) {
    body += `<line x1="${plot.x0}" y1="${py(0)}" x2="${plot.x0 + plot.w}" y2="${py(0)}" stroke="#ccc"/>\n`;
  }
  curves.forEach((curve, ci) => {
    const color = CURVE_COLORS[ci % CURVE_COLORS.length];
    const pts = curve.points.map((p) => `${px(p.x).toFixed(2)},${py(p.y).toFixed(2)}`).join(" ");
    body += `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.6"/>\n`;
    const ly = plot.y0 + 16 * ci + 10;
    body += `<rect x="${plot.x0 + plot.w + 12}" y="${ly - 8}" width="10" height="10" fill="${color}"/>\n`;
    body += `<text x="${plot.x0 + plot.w + 26}" y="${ly}">${esc(curve.label)}</text>\n`;
  });
  body += `<text x="${plot.x0 + plot.w / 2}" y="${height - 14}" text-anchor="middle">${esc(xLabel)}</text>\n`;
  body += `<text x="${plot.x0 - 8}" y="${py(yMax) + 4}" text-anchor="end">${yMax.toPrecision(3)}</text>\n`;
  body += `<text x="${plot.x0 - 8}" y="${py(yMin) + 4}" text-anchor="end">${yMin.toPrecision(3)}</text>\n`;
  return svgDoc(width, height, body);
}

/** One curve per gap value of the anti-diagonal crossection. */
export function crossectionSvg(data: CrossectionData, heading: string): string {
  const curves = data.columns.map((col) => ({
    label: col.label,
    points: col.values.map((v, i) => ({ x: data.index[i], y: v })),
  }));
  return curvesSvg(curves, heading, "anti-diagonal position");
}

/** One curve per observable label over the time grid. */
export function seriesSvg(data: SeriesData, heading: string): string {
  const curves = [...data.labels.entries()].map(([label, pts]) => ({
    label,
    points: pts.map((p) => ({ x: p.tau, y: p.value })),
  }));
  return curvesSvg(curves, heading, "tau");
}
