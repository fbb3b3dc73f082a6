/**
 * Raster backend: draws the scene into an RGB buffer and encodes a PNG
 * using node's zlib for the IDAT stream. No native dependencies.
 */

import { deflateSync } from "zlib";

import { ADVANCE, GLYPH_H, GLYPH_W, glyph, textWidth } from "./font.js";
import type { Scene, SceneItem } from "./scene.js";

const SCALE = 2; // supersample for legibility

class Raster {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) {
      return;
    }
    const k = (y * this.width + x) * 3;
    this.data[k] = rgb[0];
    this.data[k + 1] = rgb[1];
    this.data[k + 2] = rgb[2];
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    const x1 = Math.max(0, Math.round(x));
    const y1 = Math.max(0, Math.round(y));
    const x2 = Math.min(this.width, Math.round(x + w));
    const y2 = Math.min(this.height, Math.round(y + h));
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.set(xx, yy, rgb);
      }
    }
  }

  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    rgb: [number, number, number],
    width: number,
  ): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    const r = Math.max(0, Math.round(width / 2) - 1);
    for (;;) {
      for (let oy = -r; oy <= r; oy++) {
        for (let ox = -r; ox <= r; ox++) {
          this.set(xa + ox, ya + oy, rgb);
        }
      }
      if (xa === xb && ya === yb) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }
}

function parseColor(hex: string): [number, number, number] {
  const h = hex.replace("#", "");
  return [
    parseInt(h.slice(0, 2), 16),
    parseInt(h.slice(2, 4), 16),
    parseInt(h.slice(4, 6), 16),
  ];
}

function drawText(
  raster: Raster,
  item: Extract<SceneItem, { kind: "text" }>,
): void {
  const rgb = parseColor(item.color);
  const scale = Math.max(1, Math.round((item.size * SCALE) / GLYPH_H));
  const width = textWidth(item.text, scale);
  // Anchor offsets along the baseline; rotated text runs bottom-to-top.
  let ox: number;
  if (item.anchor === "middle") {
    ox = -width / 2;
  } else if (item.anchor === "end") {
    ox = -width;
  } else {
    ox = 0;
  }
  const bx = item.x * SCALE;
  const by = item.y * SCALE;
  for (let idx = 0; idx < item.text.length; idx++) {
    const rows = glyph(item.text[idx]);
    const gx = ox + idx * ADVANCE * scale;
    for (let ry = 0; ry < GLYPH_H; ry++) {
      for (let rx = 0; rx < GLYPH_W; rx++) {
        if (!(rows[ry] & (1 << (GLYPH_W - 1 - rx)))) {
          continue;
        }
        for (let py = 0; py < scale; py++) {
          for (let px = 0; px < scale; px++) {
            const lx = gx + rx * scale + px;
            const ly = (ry - GLYPH_H) * scale + py; // sit on the baseline
            if (item.rotate) {
              raster.set(Math.round(bx + ly), Math.round(by - lx), rgb);
            } else {
              raster.set(Math.round(bx + lx), Math.round(by + ly), rgb);
            }
          }
        }
      }
    }
  }
}

export function sceneToRaster(scene: Scene): Raster {
  const raster = new Raster(scene.width * SCALE, scene.height * SCALE);
  for (const item of scene.items) {
    if (item.kind === "rect") {
      raster.fillRect(
        item.x * SCALE,
        item.y * SCALE,
        item.w * SCALE,
        item.h * SCALE,
        parseColor(item.fill),
      );
    } else if (item.kind === "polyline") {
      const rgb = parseColor(item.color);
      for (let i = 1; i < item.points.length; i++) {
        raster.line(
          item.points[i - 1][0] * SCALE,
          item.points[i - 1][1] * SCALE,
          item.points[i][0] * SCALE,
          item.points[i][1] * SCALE,
          rgb,
          item.width * SCALE,
        );
      }
    } else {
      drawText(raster, item);
    }
  }
  return raster;
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(...buffers: Uint8Array[]): number {
  let c = 0xffffffff;
  for (const buf of buffers) {
    for (const byte of buf) {
      c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
    }
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(payload.length, 0);
  head.write(type, 4, "ascii");
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(head.subarray(4), payload), 0);
  return Buffer.concat([head, payload, crc]);
}

export function sceneToPng(scene: Scene): Buffer {
  const raster = sceneToRaster(scene);
  const { width, height, data } = raster;

  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // color type: truecolor
  ihdr[10] = 0;
  ihdr[11] = 0;
  ihdr[12] = 0;

  const stride = width * 3;
  const filtered = Buffer.alloc((stride + 1) * height);
  for (let y = 0; y < height; y++) {
    filtered[y * (stride + 1)] = 0; // filter type none
    filtered.set(data.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }

  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(filtered, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}
