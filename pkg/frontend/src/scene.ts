/**
 * Backend-neutral scene construction: charts are reduced to rectangles,
 * polylines, and text, which the SVG and PNG writers serialize. Keeping the
 * geometry here means both formats show exactly the same figure.
 */

export interface RectItem {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
}

export interface PolylineItem {
  kind: "polyline";
  points: Array<[number, number]>;
  color: string;
  width: number;
  dash?: string;
}

export interface TextItem {
  kind: "text";
  x: number;
  y: number;
  text: string;
  size: number;
  color: string;
  anchor: "start" | "middle" | "end";
  rotate?: boolean; // 90 degrees counterclockwise around (x, y)
}

export type SceneItem = RectItem | PolylineItem | TextItem;

export interface Scene {
  width: number;
  height: number;
  items: SceneItem[];
}

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dash?: string;
}

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

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { left: 70, right: 28, top: 44, bottom: 58 };

interface Scale {
  (v: number): number;
}

function linear(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Round tick positions covering [lo, hi] with a step of 1/2/5 x 10^k. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const raw = (hi - lo) / count;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= raw) ?? candidates[3];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function fmtNum(v: number): string {
  if (v === 0) {
    return "0";
  }
  return String(Number(v.toPrecision(6)));
}

function frame(
  items: SceneItem[],
  title: string,
  xLabel: string,
  yLabel: string,
  xTicks: number[],
  yTicks: number[],
  sx: Scale,
  sy: Scale,
): void {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = HEIGHT - MARGIN.bottom;
  items.push({
    kind: "text",
    x: WIDTH / 2,
    y: y0 - 18,
    text: title,
    size: 15,
    color: "#222222",
    anchor: "middle",
  });
  for (const t of xTicks) {
    const px = sx(t);
    items.push({
      kind: "polyline",
      points: [
        [px, y0],
        [px, y1],
      ],
      color: "#e0e0e0",
      width: 1,
    });
    items.push({
      kind: "text",
      x: px,
      y: y1 + 18,
      text: fmtNum(t),
      size: 11,
      color: "#444444",
      anchor: "middle",
    });
  }
  for (const t of yTicks) {
    const py = sy(t);
    items.push({
      kind: "polyline",
      points: [
        [x0, py],
        [x1, py],
      ],
      color: "#e0e0e0",
      width: 1,
    });
    items.push({
      kind: "text",
      x: x0 - 8,
      y: py + 4,
      text: fmtNum(t),
      size: 11,
      color: "#444444",
      anchor: "end",
    });
  }
  // axes on top of the grid
  items.push({
    kind: "polyline",
    points: [
      [x0, y0],
      [x0, y1],
      [x1, y1],
    ],
    color: "#333333",
    width: 1.5,
  });
  items.push({
    kind: "text",
    x: (x0 + x1) / 2,
    y: HEIGHT - 14,
    text: xLabel,
    size: 13,
    color: "#222222",
    anchor: "middle",
  });
  items.push({
    kind: "text",
    x: 18,
    y: (y0 + y1) / 2,
    text: yLabel,
    size: 13,
    color: "#222222",
    anchor: "middle",
    rotate: true,
  });
}

export interface LineChartOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

export function buildLineChart(opts: LineChartOpts): Scene {
  const items: SceneItem[] = [];
  const xs = opts.series.flatMap((s) => s.x);
  const ys = opts.series.flatMap((s) => s.y);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(0, Math.min(...ys));
  const yHi = Math.max(...ys) * 1.05 || 1;

  const sx = linear(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const sy = linear(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);
  frame(
    items,
    opts.title,
    opts.xLabel,
    opts.yLabel,
    niceTicks(xLo, xHi),
    niceTicks(yLo, yHi),
    sx,
    sy,
  );

  for (const s of opts.series) {
    items.push({
      kind: "polyline",
      points: s.x.map((v, i) => [sx(v), sy(s.y[i])]),
      color: s.color,
      width: 1.6,
      dash: s.dash,
    });
  }

  // legend, top right inside the plot area
  const lx = WIDTH - MARGIN.right - 190;
  let ly = MARGIN.top + 14;
  for (const s of opts.series) {
    items.push({
      kind: "polyline",
      points: [
        [lx, ly - 4],
        [lx + 22, ly - 4],
      ],
      color: s.color,
      width: 2.2,
      dash: s.dash,
    });
    items.push({
      kind: "text",
      x: lx + 28,
      y: ly,
      text: s.label,
      size: 11,
      color: "#222222",
      anchor: "start",
    });
    ly += 16;
  }
  return { width: WIDTH, height: HEIGHT, items };
}

// compact viridis approximation, evenly spaced stops
const VIRIDIS: Array<[number, number, number]> = [
  [68, 1, 84],
  [70, 50, 127],
  [54, 92, 141],
  [39, 127, 142],
  [31, 161, 135],
  [74, 194, 109],
  [159, 218, 58],
  [253, 231, 37],
];

export function colormap(v: number): string {
  const t = Math.min(1, Math.max(0, v)) * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(t));
  const f = t - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * f);
  const [r1, g1, b1] = VIRIDIS[i];
  const [r2, g2, b2] = VIRIDIS[i + 1];
  return rgb(mix(r1, r2), mix(g1, g2), mix(b1, b2));
}

function rgb(r: number, g: number, b: number): string {
  const hex = (n: number) => n.toString(16).padStart(2, "0");
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

export interface HeatmapOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  xValues: number[];
  yValues: number[];
  /** cells[i][j] at (xValues[i], yValues[j]), expected within [0, 1] */
  cells: number[][];
  annotateMax: { x: number; y: number; value: number };
}

export function buildHeatmap(opts: HeatmapOpts): Scene {
  const items: SceneItem[] = [];
  const barGap = 74; // room for the colorbar on the right
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right - barGap;
  const y0 = MARGIN.top;
  const y1 = HEIGHT - MARGIN.bottom;
  const nx = opts.xValues.length;
  const ny = opts.yValues.length;
  const cw = (x1 - x0) / nx;
  const ch = (y1 - y0) / ny;

  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < ny; j++) {
      items.push({
        kind: "rect",
        x: x0 + i * cw,
        y: y1 - (j + 1) * ch,
        w: cw + 0.5,
        h: ch + 0.5,
        fill: colormap(opts.cells[i][j]),
      });
    }
  }

  // tick labels at a subset of cell centers
  const xStep = Math.max(1, Math.round(nx / 6));
  for (let i = 0; i < nx; i += xStep) {
    items.push({
      kind: "text",
      x: x0 + (i + 0.5) * cw,
      y: y1 + 18,
      text: fmtNum(opts.xValues[i]),
      size: 11,
      color: "#444444",
      anchor: "middle",
    });
  }
  const yStep = Math.max(1, Math.round(ny / 6));
  for (let j = 0; j < ny; j += yStep) {
    items.push({
      kind: "text",
      x: x0 - 8,
      y: y1 - (j + 0.5) * ch + 4,
      text: fmtNum(opts.yValues[j]),
      size: 11,
      color: "#444444",
      anchor: "end",
    });
  }
  items.push({
    kind: "text",
    x: WIDTH / 2,
    y: y0 - 18,
    text: opts.title,
    size: 15,
    color: "#222222",
    anchor: "middle",
  });
  items.push({
    kind: "text",
    x: (x0 + x1) / 2,
    y: HEIGHT - 14,
    text: opts.xLabel,
    size: 13,
    color: "#222222",
    anchor: "middle",
  });
  items.push({
    kind: "text",
    x: 18,
    y: (y0 + y1) / 2,
    text: opts.yLabel,
    size: 13,
    color: "#222222",
    anchor: "middle",
    rotate: true,
  });

  // colorbar spanning [0, 1]
  const bx = x1 + 26;
  const bw = 16;
  const bands = 64;
  for (let k = 0; k < bands; k++) {
    const v = k / (bands - 1);
    const by = y1 - ((k + 1) / bands) * (y1 - y0);
    items.push({
      kind: "rect",
      x: bx,
      y: by,
      w: bw,
      h: (y1 - y0) / bands + 0.5,
      fill: colormap(v),
    });
  }
  for (const v of [0, 0.25, 0.5, 0.75, 1]) {
    items.push({
      kind: "text",
      x: bx + bw + 6,
      y: y1 - v * (y1 - y0) + 4,
      text: fmtNum(v),
      size: 10,
      color: "#444444",
      anchor: "start",
    });
  }

  // argmax annotation: cross marker on the cell plus a caption
  const mi = opts.xValues.indexOf(opts.annotateMax.x);
  const mj = opts.yValues.indexOf(opts.annotateMax.y);
  const mx = x0 + (mi + 0.5) * cw;
  const my = y1 - (mj + 0.5) * ch;
  const r = Math.min(cw, ch) * 0.45 + 3;
  items.push({
    kind: "polyline",
    points: [
      [mx - r, my],
      [mx + r, my],
    ],
    color: "#ffffff",
    width: 2,
  });
  items.push({
    kind: "polyline",
    points: [
      [mx, my - r],
      [mx, my + r],
    ],
    color: "#ffffff",
    width: 2,
  });
  items.push({
    kind: "text",
    x: (x0 + x1) / 2,
    y: y0 - 4,
    text:
      `max F=${fmtNum(opts.annotateMax.value)} @ ` +
      `${opts.xLabel}=${fmtNum(opts.annotateMax.x)}, ` +
      `${opts.yLabel}=${fmtNum(opts.annotateMax.y)}`,
    size: 11,
    color: "#555555",
    anchor: "middle",
  });
  return { width: WIDTH, height: HEIGHT, items };
}
