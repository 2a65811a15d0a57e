/**
 * Backend-neutral drawing primitives.  The chart builder emits a Scene;
 * the SVG and PNG writers render the same Scene, which is what makes the
 * two siblings agree and keeps both deterministic.
 */

export interface Line {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string; // #rrggbb
  width: number;
}

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
}

export interface Marker {
  x: number;
  y: number;
  r: number;
  color: string;
}

export interface Text {
  x: number;
  y: number; // baseline
  text: string;
  color: string;
  size: number; // approximate cap height in px
  anchor: "start" | "middle" | "end";
  rotated?: boolean; // 90 degrees counter-clockwise about (x, y)
}

export interface Scene {
  width: number;
  height: number;
  background: string;
  rects: Rect[];
  lines: Line[];
  markers: Marker[];
  texts: Text[];
}

// Default per-curve colors, assigned by first appearance when the style
// map has no entry for a method.
export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export function hexToRgb(color: string): [number, number, number] {
  const m = /^#([0-9a-fA-F]{6})$/.exec(color);
  if (!m) throw new Error(`expected #rrggbb color, got ${JSON.stringify(color)}`);
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}
