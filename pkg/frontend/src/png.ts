/**
 * Scene -> PNG, with no image library: the scene is rasterized onto an
 * RGB byte buffer (Bresenham lines, filled discs, the 5x7 bitmap font)
 * and wrapped in a minimal PNG container -- 8-bit truecolor, filter 0
 * on every scanline, one zlib-deflated IDAT chunk.  Everything is a
 * pure function of the scene, so the bytes are reproducible.
 */

import { deflateSync } from "node:zlib";
import { glyph, GLYPH_H, GLYPH_W } from "./font";
import { hexToRgb, Scene, Text } from "./scene";

// ---------------------------------------------------------------------------
// Rasterizer
// ---------------------------------------------------------------------------

class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array; // RGB, row-major

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3);
  }

  fill(rgb: [number, number, number]): void {
    for (let i = 0; i < this.pixels.length; i += 3) {
      this.pixels[i] = rgb[0];
      this.pixels[i + 1] = rgb[1];
      this.pixels[i + 2] = rgb[2];
    }
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.pixels[i] = rgb[0];
    this.pixels[i + 1] = rgb[1];
    this.pixels[i + 2] = rgb[2];
  }

  rect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    const x0 = Math.round(x);
    const y0 = Math.round(y);
    for (let yy = y0; yy < y0 + Math.round(h); yy++) {
      for (let xx = x0; xx < x0 + Math.round(w); xx++) this.set(xx, yy, rgb);
    }
  }

  line(x1: number, y1: number, x2: number, y2: number,
       rgb: [number, number, number], width: number): void {
    let x0 = Math.round(x1);
    let y0 = Math.round(y1);
    const xe = Math.round(x2);
    const ye = Math.round(y2);
    const dx = Math.abs(xe - x0);
    const dy = -Math.abs(ye - y0);
    const sx = x0 < xe ? 1 : -1;
    const sy = y0 < ye ? 1 : -1;
    const steep = dy < -dx; // thickness is laid out across the dominant axis
    const extra = Math.round(width) - 1; // 0 for hairlines
    let err = dx + dy;
    for (;;) {
      for (let o = 0; o <= extra; o++) {
        const off = o - (extra >> 1);
        if (steep) this.set(x0 + off, y0, rgb);
        else this.set(x0, y0 + off, rgb);
      }
      if (x0 === xe && y0 === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  disc(cx: number, cy: number, r: number, rgb: [number, number, number]): void {
    const ri = Math.ceil(r);
    const x0 = Math.round(cx);
    const y0 = Math.round(cy);
    for (let dy = -ri; dy <= ri; dy++) {
      for (let dx = -ri; dx <= ri; dx++) {
        if (dx * dx + dy * dy <= r * r) this.set(x0 + dx, y0 + dy, rgb);
      }
    }
  }

  text(t: Text, rgb: [number, number, number]): void {
    const scale = t.size >= 12 ? 2 : 1;
    const advance = (GLYPH_W + 1) * scale;
    const tw = t.text.length * advance - scale;
    const shift = t.anchor === "middle" ? -tw / 2 : t.anchor === "end" ? -tw : 0;
    for (let i = 0; i < t.text.length; i++) {
      const rows = glyph(t.text[i]);
      const a0 = shift + i * advance;
      for (let rr = 0; rr < GLYPH_H; rr++) {
        for (let cc = 0; cc < GLYPH_W; cc++) {
          if (!(rows[rr] & (1 << (GLYPH_W - 1 - cc)))) continue;
          for (let sy = 0; sy < scale; sy++) {
            for (let sx = 0; sx < scale; sx++) {
              const a = a0 + cc * scale + sx; // advance along the text
              const c = (rr - GLYPH_H) * scale + sy; // above the baseline
              if (t.rotated) this.set(Math.round(t.x + c), Math.round(t.y - a), rgb);
              else this.set(Math.round(t.x + a), Math.round(t.y + c), rgb);
            }
          }
        }
      }
    }
  }
}

export function rasterize(scene: Scene): Raster {
  const r = new Raster(scene.width, scene.height);
  r.fill(hexToRgb(scene.background));
  for (const rc of scene.rects) r.rect(rc.x, rc.y, rc.w, rc.h, hexToRgb(rc.color));
  for (const ln of scene.lines) r.line(ln.x1, ln.y1, ln.x2, ln.y2, hexToRgb(ln.color), ln.width);
  for (const mk of scene.markers) r.disc(mk.x, mk.y, mk.r, hexToRgb(mk.color));
  for (const tx of scene.texts) r.text(tx, hexToRgb(tx.color));
  return r;
}

// ---------------------------------------------------------------------------
// PNG container
// ---------------------------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    c = CRC_TABLE[(c ^ buf[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const head = Buffer.alloc(4);
  head.writeUInt32BE(data.length);
  const body = Buffer.concat([Buffer.from(type, "latin1"), data]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body));
  return Buffer.concat([head, body, tail]);
}

export function encodePng(width: number, height: number, pixels: Uint8Array): Buffer {
  if (pixels.length !== width * height * 3) {
    throw new Error("pixel buffer does not match width * height * 3");
  }
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // truecolor
  // compression 0, filter 0, interlace 0 already zeroed

  const raw = Buffer.alloc((width * 3 + 1) * height);
  for (let y = 0; y < height; y++) {
    // leading 0 = "no filter" for the scanline
    raw.set(pixels.subarray(y * width * 3, (y + 1) * width * 3), y * (width * 3 + 1) + 1);
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}

export function sceneToPng(scene: Scene): Buffer {
  const raster = rasterize(scene);
  return encodePng(raster.width, raster.height, raster.pixels);
}
