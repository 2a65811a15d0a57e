/**
 * Top-level entry: read a harness CSV, aggregate one figure's rows and
 * write the chart as PNG plus an SVG sibling next to it.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { aggregate } from "./aggregate";
import { buildChart, MethodStyle } from "./chart";
import { DataError, parseResults } from "./csv";
import { sceneToPng } from "./png";
import { sceneToSvg } from "./svg";

export interface PlotSpec {
  csvPath: string;
  outPath: string; // PNG target; the SVG sibling swaps the extension
  figure: string;
  styles?: Record<string, MethodStyle>;
  /** Warnings sink; defaults to console.warn. */
  warn?: (message: string) => void;
}

export interface RenderResult {
  pngPath: string;
  svgPath: string;
  methods: string[];
}

export function svgSibling(outPath: string): string {
  return outPath.endsWith(".png")
    ? outPath.slice(0, -4) + ".svg"
    : outPath + ".svg";
}

export function render(spec: PlotSpec): RenderResult {
  const warn = spec.warn ?? ((m: string) => console.warn(m));
  const rows = parseResults(readFileSync(spec.csvPath, "utf-8"));
  const selected = rows.filter((r) => r.figure === spec.figure);
  if (selected.length === 0) {
    const figures = [...new Set(rows.map((r) => r.figure))].join(", ") || "none";
    throw new DataError(
      `no rows for figure ${JSON.stringify(spec.figure)} (file has: ${figures})`
    );
  }

  // styles may name methods the file does not have -- skip them loudly
  const present = new Set(selected.map((r) => r.method));
  for (const method of Object.keys(spec.styles ?? {})) {
    if (!present.has(method)) {
      warn(`method ${JSON.stringify(method)}: no rows for figure ${spec.figure}, skipped`);
    }
  }

  const curves = aggregate(selected);
  const scene = buildChart(curves, { title: spec.figure, styles: spec.styles });

  const svgPath = svgSibling(spec.outPath);
  writeFileSync(spec.outPath, sceneToPng(scene));
  writeFileSync(svgPath, sceneToSvg(scene), "utf-8");
  return { pngPath: spec.outPath, svgPath, methods: curves.map((c) => c.method) };
}
