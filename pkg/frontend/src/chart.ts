/**
 * Layout: turn aggregated curves into a Scene.
 *
 * y = mean of log10(wce_sq) with +/- one standard deviation bars,
 * x = n on a log2 axis, one polyline per method, legend in
 * first-appearance order.
 */

import { Curve } from "./aggregate";
import { Line, Marker, PALETTE, Rect, Scene, Text } from "./scene";

export interface MethodStyle {
  label?: string;
  color?: string; // #rrggbb
}

export interface ChartOptions {
  title: string;
  width?: number;
  height?: number;
  styles?: Record<string, MethodStyle>;
}

const W = 720;
const H = 420;
const ML = 70;
const MR = 18;
const MT = 46;
const MB = 54;

const AXIS = "#333333";
const GRID = "#e8e8e8";
const MUTED = "#666666";

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function tickLabel(v: number, ticks: number[]): string {
  const step = ticks.length > 1 ? ticks[1] - ticks[0] : 1;
  const decimals = Math.max(0, -Math.floor(Math.log10(step) + 1e-9));
  return v.toFixed(decimals);
}

export function buildChart(curves: Curve[], opts: ChartOptions): Scene {
  const width = opts.width ?? W;
  const height = opts.height ?? H;
  const pw = width - ML - MR;
  const ph = height - MT - MB;

  const scene: Scene = {
    width,
    height,
    background: "#ffffff",
    rects: [],
    lines: [],
    markers: [],
    texts: [],
  };
  if (curves.length === 0 || curves.every((c) => c.points.length === 0)) {
    scene.texts.push({
      x: width / 2, y: height / 2, text: "no data", color: MUTED,
      size: 12, anchor: "middle",
    });
    return scene;
  }

  // -- scales ---------------------------------------------------------
  const ns = [...new Set(curves.flatMap((c) => c.points.map((p) => p.n)))].sort(
    (a, b) => a - b
  );
  const us = ns.map((n) => Math.log2(n));
  const uMin = us[0];
  const uMax = us[us.length - 1];
  const uPad = uMin === uMax ? 1 : (uMax - uMin) * 0.06;
  const xOf = (n: number) =>
    ML + ((Math.log2(n) - (uMin - uPad)) / (uMax - uMin + 2 * uPad)) * pw;

  const lows = curves.flatMap((c) => c.points.map((p) => p.mean - p.std));
  const highs = curves.flatMap((c) => c.points.map((p) => p.mean + p.std));
  let yLo = Math.min(...lows);
  let yHi = Math.max(...highs);
  const span = yHi - yLo;
  yLo -= span === 0 ? 0.5 : span * 0.06;
  yHi += span === 0 ? 0.5 : span * 0.06;
  const yOf = (v: number) => MT + ph - ((v - yLo) / (yHi - yLo)) * ph;

  // -- frame, grid, ticks ---------------------------------------------
  const yTicks = niceTicks(yLo, yHi, 6);
  for (const v of yTicks) {
    const y = yOf(v);
    scene.lines.push({ x1: ML, y1: y, x2: ML + pw, y2: y, color: GRID, width: 1 });
    scene.lines.push({ x1: ML - 4, y1: y, x2: ML, y2: y, color: AXIS, width: 1 });
    scene.texts.push({
      x: ML - 7, y: y + 3, text: tickLabel(v, yTicks), color: MUTED,
      size: 9, anchor: "end",
    });
  }
  for (const n of ns) {
    const x = xOf(n);
    scene.lines.push({ x1: x, y1: MT, x2: x, y2: MT + ph, color: GRID, width: 1 });
    scene.lines.push({ x1: x, y1: MT + ph, x2: x, y2: MT + ph + 4, color: AXIS, width: 1 });
    scene.texts.push({
      x, y: MT + ph + 16, text: String(n), color: MUTED, size: 9, anchor: "middle",
    });
  }
  scene.lines.push({ x1: ML, y1: MT, x2: ML, y2: MT + ph, color: AXIS, width: 1 });
  scene.lines.push({ x1: ML, y1: MT + ph, x2: ML + pw, y2: MT + ph, color: AXIS, width: 1 });

  scene.texts.push({
    x: width / 2, y: 20, text: opts.title, color: AXIS, size: 13, anchor: "middle",
  });
  scene.texts.push({
    x: width / 2, y: 34, text: "error bars: +/- 1 std of log10(wce_sq) over trials",
    color: MUTED, size: 8, anchor: "middle",
  });
  scene.texts.push({
    x: ML + pw / 2, y: height - 12, text: "n (log2 axis)", color: AXIS,
    size: 10, anchor: "middle",
  });
  scene.texts.push({
    x: 16, y: MT + ph / 2, text: "mean log10(wce_sq)", color: AXIS,
    size: 10, anchor: "middle", rotated: true,
  });

  // -- curves ---------------------------------------------------------
  const CAP = 3; // error-bar cap half-width, px
  curves.forEach((curve, idx) => {
    const style = opts.styles?.[curve.method] ?? {};
    const color = style.color ?? PALETTE[idx % PALETTE.length];
    const pts = curve.points.map((p) => ({ x: xOf(p.n), y: yOf(p.mean), p }));
    for (let i = 1; i < pts.length; i++) {
      scene.lines.push({
        x1: pts[i - 1].x, y1: pts[i - 1].y, x2: pts[i].x, y2: pts[i].y,
        color, width: 1.5,
      });
    }
    for (const { x, p } of pts) {
      const yTop = yOf(p.mean + p.std);
      const yBot = yOf(p.mean - p.std);
      scene.lines.push({ x1: x, y1: yTop, x2: x, y2: yBot, color, width: 1 });
      scene.lines.push({ x1: x - CAP, y1: yTop, x2: x + CAP, y2: yTop, color, width: 1 });
      scene.lines.push({ x1: x - CAP, y1: yBot, x2: x + CAP, y2: yBot, color, width: 1 });
    }
    for (const { x, y } of pts) {
      scene.markers.push({ x, y, r: 2.5, color });
    }
  });

  // -- legend (curve order == first appearance in the CSV) ------------
  const labels = curves.map(
    (c, i) => opts.styles?.[c.method]?.label ?? c.method
  );
  const boxW = Math.max(...labels.map((l) => l.length)) * 5.6 + 34;
  const boxH = curves.length * 13 + 8;
  const bx = ML + pw - boxW - 8;
  const by = MT + 8;
  scene.rects.push({ x: bx, y: by, w: boxW, h: boxH, color: "#ffffff" });
  scene.lines.push({ x1: bx, y1: by, x2: bx + boxW, y2: by, color: "#cccccc", width: 1 });
  scene.lines.push({ x1: bx, y1: by + boxH, x2: bx + boxW, y2: by + boxH, color: "#cccccc", width: 1 });
  scene.lines.push({ x1: bx, y1: by, x2: bx, y2: by + boxH, color: "#cccccc", width: 1 });
  scene.lines.push({ x1: bx + boxW, y1: by, x2: bx + boxW, y2: by + boxH, color: "#cccccc", width: 1 });
  curves.forEach((curve, idx) => {
    const style = opts.styles?.[curve.method] ?? {};
    const color = style.color ?? PALETTE[idx % PALETTE.length];
    const y = by + 10 + idx * 13;
    scene.lines.push({ x1: bx + 6, y1: y, x2: bx + 22, y2: y, color, width: 1.5 });
    scene.texts.push({
      x: bx + 27, y: y + 3, text: labels[idx], color: AXIS, size: 9, anchor: "start",
    });
  });

  return scene;
}
