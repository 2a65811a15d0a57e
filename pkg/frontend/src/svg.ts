/** Scene -> SVG markup.  Pure string building; no timestamps, no ids. */

import { Scene } from "./scene";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const f = (v: number) => v.toFixed(2);

export function sceneToSvg(scene: Scene): string {
  let s = `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${scene.width}" height="${scene.height}" fill="${scene.background}"/>\n`;
  for (const r of scene.rects) {
    s += `<rect x="${f(r.x)}" y="${f(r.y)}" width="${f(r.w)}" height="${f(r.h)}" fill="${r.color}"/>\n`;
  }
  for (const l of scene.lines) {
    s += `<line x1="${f(l.x1)}" y1="${f(l.y1)}" x2="${f(l.x2)}" y2="${f(l.y2)}" stroke="${l.color}" stroke-width="${l.width}"/>\n`;
  }
  for (const m of scene.markers) {
    s += `<circle cx="${f(m.x)}" cy="${f(m.y)}" r="${m.r}" fill="${m.color}"/>\n`;
  }
  for (const t of scene.texts) {
    const anchor = t.anchor === "start" ? "" : ` text-anchor="${t.anchor}"`;
    const rot = t.rotated ? ` transform="rotate(-90,${f(t.x)},${f(t.y)})"` : "";
    s += `<text x="${f(t.x)}" y="${f(t.y)}" font-size="${t.size}" fill="${t.color}"${anchor}${rot}>${esc(t.text)}</text>\n`;
  }
  s += `</svg>\n`;
  return s;
}
