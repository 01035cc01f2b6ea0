/**
 * Deterministic SVG small-multiples builder.
 *
 * Line panels share a fixed y axis of [0, 1] (every plotted series is a
 * probability or a variance bounded by .25); values are clamped into the
 * axis as a last defense. No DOM: the SVG is assembled as a string, so a
 * render is a pure function of its inputs.
 */

export type Role = "agent" | "run-mean" | "variance" | "grand-mean";

export const ROLE_COLORS: Record<Role, string> = {
  agent: "#9aa0a6",
  "run-mean": "#d62728",
  variance: "#000000",
  "grand-mean": "#8e44ad",
};

export interface Series {
  xs: number[];
  ys: number[];
  role: Role;
  /** optional per-series override within the role's family (e.g. gray shades) */
  color?: string;
  dash?: string;
  width?: number;
  label?: string;
}

export interface Panel {
  title: string;
  series: Series[];
}

export interface LineFigure {
  title: string;
  panels: Panel[];
  columns: number;
  xLabel: string;
  yLabel: string;
}

const PANEL_W = 240;
const PANEL_H = 180;
const MARGIN = { top: 34, right: 12, bottom: 34, left: 40 };
const OUTER = { top: 40, left: 10, right: 10, bottom: 10 };

const clamp01 = (v: number) => Math.min(1, Math.max(0, v));
const fmt = (v: number) => (Math.round(v * 100) / 100).toFixed(2);

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function panelSvg(panel: Panel, px: number, py: number, xDomain: [number, number]): string {
  const innerW = PANEL_W - MARGIN.left - MARGIN.right;
  const innerH = PANEL_H - MARGIN.top - MARGIN.bottom;
  const [x0, x1] = xDomain;
  const spanX = x1 - x0 || 1;
  const sx = (x: number) => MARGIN.left + ((x - x0) / spanX) * innerW;
  const sy = (y: number) => MARGIN.top + (1 - clamp01(y)) * innerH;

  const parts: string[] = [];
  parts.push(`<g class="panel" transform="translate(${px},${py})">`);
  parts.push(
    `<rect class="panel-frame" x="${MARGIN.left}" y="${MARGIN.top}" width="${innerW}" height="${innerH}" fill="none" stroke="#cccccc"/>`
  );
  parts.push(
    `<text class="panel-title" x="${PANEL_W / 2}" y="${MARGIN.top - 10}" text-anchor="middle" font-size="11">${escapeXml(panel.title)}</text>`
  );
  // y ticks at 0, .5, 1 and x ticks at the domain ends
  for (const tick of [0, 0.5, 1]) {
    const y = sy(tick);
    parts.push(`<line x1="${MARGIN.left - 3}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="#666666"/>`);
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${y + 3}" text-anchor="end" font-size="9">${tick}</text>`
    );
  }
  for (const tick of [x0, x1]) {
    const x = sx(tick);
    parts.push(
      `<text x="${x}" y="${MARGIN.top + innerH + 12}" text-anchor="middle" font-size="9">${fmt(tick)}</text>`
    );
  }
  for (const series of panel.series) {
    const color = series.color ?? ROLE_COLORS[series.role];
    const width = series.width ?? (series.role === "agent" ? 0.6 : 1.4);
    const dash = series.dash ? ` stroke-dasharray="${series.dash}"` : "";
    const points = series.xs
      .map((x, i) => `${fmt(sx(x))},${fmt(sy(series.ys[i]))}`)
      .join(" ");
    parts.push(
      `<polyline class="series role-${series.role}" fill="none" stroke="${color}" stroke-width="${width}"${dash} points="${points}"/>`
    );
  }
  parts.push("</g>");
  return parts.join("\n");
}

export function renderLineFigure(figure: LineFigure): string {
  if (figure.panels.length === 0) {
    throw new Error(`figure "${figure.title}" has no panels to draw`);
  }
  for (const panel of figure.panels) {
    if (panel.series.length === 0) {
      throw new Error(`panel "${panel.title}" has no series to draw`);
    }
  }
  const xs = figure.panels.flatMap((p) => p.series.flatMap((s) => s.xs));
  const xDomain: [number, number] = [Math.min(...xs), Math.max(...xs)];
  const columns = Math.max(1, figure.columns);
  const rows = Math.ceil(figure.panels.length / columns);
  const width = OUTER.left + columns * PANEL_W + OUTER.right;
  const height = OUTER.top + rows * PANEL_H + OUTER.bottom;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`
  );
  parts.push(
    `<text class="figure-title" x="${width / 2}" y="22" text-anchor="middle" font-size="14">${escapeXml(figure.title)}</text>`
  );
  figure.panels.forEach((panel, i) => {
    const px = OUTER.left + (i % columns) * PANEL_W;
    const py = OUTER.top + Math.floor(i / columns) * PANEL_H;
    parts.push(panelSvg(panel, px, py, xDomain));
  });
  parts.push(
    `<text class="x-label" x="${width / 2}" y="${height - 2}" text-anchor="middle" font-size="10">${escapeXml(figure.xLabel)}</text>`
  );
  parts.push(
    `<text class="y-label" x="10" y="${height / 2}" font-size="10" transform="rotate(-90 10 ${height / 2})" text-anchor="middle">${escapeXml(figure.yLabel)}</text>`
  );
  parts.push("</svg>");
  return parts.join("\n");
}

export interface HeatPanel {
  title: string;
  xs: number[]; // sorted cell centers
  ys: number[];
  /** values[yi][xi], each in [0, 1] */
  values: number[][];
}

export interface HeatFigure {
  title: string;
  panels: HeatPanel[];
  columns: number;
  xLabel: string;
  yLabel: string;
}

function heatColor(v: number): string {
  // white (0) to deep red (1)
  const t = clamp01(v);
  const r = Math.round(255 - 70 * t);
  const g = Math.round(255 - 215 * t);
  const b = Math.round(255 - 215 * t);
  return `rgb(${r},${g},${b})`;
}

export function renderHeatFigure(figure: HeatFigure): string {
  if (figure.panels.length === 0) {
    throw new Error(`figure "${figure.title}" has no panels to draw`);
  }
  const columns = Math.max(1, figure.columns);
  const rows = Math.ceil(figure.panels.length / columns);
  const width = OUTER.left + columns * PANEL_W + OUTER.right;
  const height = OUTER.top + rows * PANEL_H + OUTER.bottom;
  const innerW = PANEL_W - MARGIN.left - MARGIN.right;
  const innerH = PANEL_H - MARGIN.top - MARGIN.bottom;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`
  );
  parts.push(
    `<text class="figure-title" x="${width / 2}" y="22" text-anchor="middle" font-size="14">${escapeXml(figure.title)}</text>`
  );
  figure.panels.forEach((panel, i) => {
    const px = OUTER.left + (i % columns) * PANEL_W;
    const py = OUTER.top + Math.floor(i / columns) * PANEL_H;
    const cellW = innerW / panel.xs.length;
    const cellH = innerH / panel.ys.length;
    parts.push(`<g class="panel" transform="translate(${px},${py})">`);
    parts.push(
      `<text class="panel-title" x="${PANEL_W / 2}" y="${MARGIN.top - 10}" text-anchor="middle" font-size="11">${escapeXml(panel.title)}</text>`
    );
    panel.ys.forEach((_, yi) => {
      panel.xs.forEach((_, xi) => {
        const x = MARGIN.left + xi * cellW;
        const y = MARGIN.top + (panel.ys.length - 1 - yi) * cellH;
        parts.push(
          `<rect class="cell" x="${fmt(x)}" y="${fmt(y)}" width="${fmt(cellW)}" height="${fmt(cellH)}" fill="${heatColor(panel.values[yi][xi])}"/>`
        );
      });
    });
    parts.push(
      `<rect class="panel-frame" x="${MARGIN.left}" y="${MARGIN.top}" width="${innerW}" height="${innerH}" fill="none" stroke="#cccccc"/>`
    );
    parts.push("</g>");
  });
  parts.push(
    `<text class="x-label" x="${width / 2}" y="${height - 2}" text-anchor="middle" font-size="10">${escapeXml(figure.xLabel)}</text>`
  );
  parts.push(
    `<text class="y-label" x="10" y="${height / 2}" font-size="10" transform="rotate(-90 10 ${height / 2})" text-anchor="middle">${escapeXml(figure.yLabel)}</text>`
  );
  parts.push("</svg>");
  return parts.join("\n");
}
