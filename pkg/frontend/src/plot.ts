/**
 * Deterministic SVG builders: log-scale error-rate curves and spectra
 * bar charts. Pure string construction — identical input yields
 * byte-identical SVG.
 */

import { Row, groupBy } from "./csv.js";

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const fmt = (v: number): string => {
  const s = v.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
};

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function frame(title: string, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<text x="${WIDTH / 2}" y="28" text-anchor="middle" font-size="17" fill="#111111">${esc(title)}</text>`,
    ...body,
    `</svg>`,
    ``,
  ].join("\n");
}

function axes(xLabel: string, yLabel: string): string[] {
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + PLOT_H;
  return [
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="#333333"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0 + PLOT_W}" y2="${y0}" stroke="#333333"/>`,
    `<text x="${x0 + PLOT_W / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13" fill="#111111">${esc(xLabel)}</text>`,
    `<text x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="13" fill="#111111" transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${esc(yLabel)}</text>`,
  ];
}

export interface CurveSpec {
  rows: Row[];
  groupKeys: string[];
  y: "ber" | "fer";
  title: string;
}

export interface CurvePoint {
  ebn0: number;
  value: number;
}

export interface CurveSeries {
  label: string;
  points: CurvePoint[]; // sorted by ebn0, zero values dropped (log axis)
}

/** Group rows into plottable series; exported for testing. */
export function curveSeries(rows: Row[], groupKeys: string[], y: "ber" | "fer"): CurveSeries[] {
  const groups = groupBy(rows, groupKeys);
  const series: CurveSeries[] = [];
  for (const [label, bucket] of groups) {
    const points = bucket
      .map((r) => ({ ebn0: Number(r.ebn0_db), value: Number(r[y]) }))
      .filter((p) => Number.isFinite(p.ebn0) && p.value > 0)
      .sort((a, b) => a.ebn0 - b.ebn0);
    series.push({ label, points });
  }
  return series;
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const step = (hi - lo) / (count - 1);
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

export function renderCurves(spec: CurveSpec): string {
  const series = curveSeries(spec.rows, spec.groupKeys, spec.y);
  const allPoints = series.flatMap((s) => s.points);
  const yLabel = spec.y.toUpperCase() + " (log scale)";
  const xLabel = "Eb/N0 (dB)";
  if (allPoints.length === 0) {
    return frame(spec.title, axes(xLabel, yLabel));
  }

  const xs = allPoints.map((p) => p.ebn0);
  const logs = allPoints.map((p) => Math.log10(p.value));
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const yLo = Math.floor(Math.min(...logs));
  const yHi = Math.ceil(Math.max(...logs, yLo + 1e-9) + 0.05);

  const px = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * PLOT_W;
  const py = (logv: number) =>
    MARGIN.top + PLOT_H - ((logv - yLo) / (yHi - yLo)) * PLOT_H;

  const body = axes(xLabel, yLabel);

  for (const tick of niceTicks(xLo, xHi, 5)) {
    const x = px(tick);
    body.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top + PLOT_H}" x2="${fmt(x)}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333333"/>`,
      `<text x="${fmt(x)}" y="${MARGIN.top + PLOT_H + 20}" text-anchor="middle" font-size="11" fill="#333333">${tick.toFixed(2)}</text>`
    );
  }
  for (let e = yLo; e <= yHi; e++) {
    const y = py(e);
    body.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + PLOT_W}" y2="${fmt(y)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11" fill="#333333">1e${e}</text>`
    );
  }

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (s.points.length > 0) {
      const path = s.points
        .map((p, j) => `${j === 0 ? "M" : "L"}${fmt(px(p.ebn0))} ${fmt(py(Math.log10(p.value)))}`)
        .join(" ");
      body.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
      for (const p of s.points) {
        body.push(
          `<circle cx="${fmt(px(p.ebn0))}" cy="${fmt(py(Math.log10(p.value)))}" r="3.5" fill="${color}"/>`
        );
      }
    }
    const ly = MARGIN.top + 10 + i * 18;
    const lx = MARGIN.left + PLOT_W - 200;
    body.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 24}" y2="${ly}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${lx + 30}" y="${ly + 4}" font-size="12" fill="#111111">${esc(s.label)}</text>`
    );
  });

  return frame(spec.title, body);
}

export interface BarSpec {
  rows: Row[];
  value: string; // column holding the bar height, e.g. "sdc_n"
  title: string;
}

export interface Bar {
  label: string;
  value: number;
}

/** One bar per row, labeled by pattern_name; exported for testing. */
export function spectraBars(rows: Row[], value: string): Bar[] {
  return rows.map((r) => {
    const v = Number(r[value]);
    if (!Number.isFinite(v)) {
      throw new Error(`missing required column: ${value}`);
    }
    return { label: `${r.pattern_name} (n'=${r.n_prime})`, value: v };
  });
}

export function renderSpectraBars(spec: BarSpec): string {
  const bars = spectraBars(spec.rows, spec.value);
  const yLabel = spec.value;
  const body = axes("pattern", yLabel);
  if (bars.length === 0) {
    return frame(spec.title, body);
  }
  const maxV = Math.max(...bars.map((b) => b.value), 1e-12);
  const yHi = maxV * 1.1;
  const slot = PLOT_W / bars.length;
  const barW = slot * 0.6;

  for (const tick of niceTicks(0, yHi, 5)) {
    const y = MARGIN.top + PLOT_H - (tick / yHi) * PLOT_H;
    body.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + PLOT_W}" y2="${fmt(y)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11" fill="#333333">${tick.toFixed(2)}</text>`
    );
  }

  bars.forEach((bar, i) => {
    const h = (bar.value / yHi) * PLOT_H;
    const x = MARGIN.left + i * slot + (slot - barW) / 2;
    const y = MARGIN.top + PLOT_H - h;
    const color = PALETTE[i % PALETTE.length];
    body.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(barW)}" height="${fmt(h)}" fill="${color}"/>`,
      `<text x="${fmt(x + barW / 2)}" y="${fmt(y - 6)}" text-anchor="middle" font-size="11" fill="#111111">${bar.value}</text>`,
      `<text x="${fmt(x + barW / 2)}" y="${MARGIN.top + PLOT_H + 20}" text-anchor="middle" font-size="12" fill="#111111">${esc(bar.label)}</text>`
    );
  });

  return frame(spec.title, body);
}
