/**
 * Figure assembly: locate a figure's CSV files, build the scene, and write
 * the image. Rendering never touches the input files beyond reading them,
 * and the output carries no timestamps, so re-rendering is idempotent.
 */

import { readdirSync, writeFileSync } from "fs";
import * as path from "path";

import { asSurface, column, CsvError, readTable, type Table } from "./csv.js";
import { FIGURES, figureIdOf, variantOf, type FigureSpec } from "./figures.js";
import {
  buildHeatmap,
  buildLineChart,
  PALETTE,
  type Scene,
  type Series,
} from "./scene.js";
import { sceneToPng } from "./png.js";
import { sceneToSvg } from "./svg.js";

export type ImageFormat = "svg" | "png";

export interface FigureJob {
  id: string;
  /** the figure's CSV files, first file drawn solid, later ones dashed */
  files: string[];
  outPath: string;
  format: ImageFormat;
}

function lineSeries(tables: Table[]): Series[] {
  const series: Series[] = [];
  const multi = tables.length > 1;
  let colorIndex = 0;
  tables.forEach((table, t) => {
    const x = column(table, 0);
    const variant = variantOf(path.basename(table.file));
    for (let j = 1; j < table.header.length; j++) {
      const suffix = multi && variant ? ` (${variant})` : "";
      series.push({
        label: table.header[j] + suffix,
        x,
        y: column(table, j),
        color: PALETTE[colorIndex % PALETTE.length],
        dash: t > 0 ? "5,4" : undefined,
      });
      colorIndex += 1;
    }
  });
  return series;
}

export function buildFigure(spec: FigureSpec, files: string[]): Scene {
  if (spec.kind === "heatmap") {
    const surfaceFile = files.find((f) => f.endsWith("_surface.csv")) ?? files[0];
    const surface = asSurface(readTable(surfaceFile));
    return buildHeatmap({
      title: spec.title,
      xLabel: spec.xLabel,
      yLabel: spec.yLabel,
      xValues: surface.xValues,
      yValues: surface.yValues,
      cells: surface.cells,
      annotateMax: surface.max,
    });
  }
  const tables = files.map(readTable);
  return buildLineChart({
    title: spec.title,
    xLabel: spec.xLabel,
    yLabel: spec.yLabel,
    series: lineSeries(tables),
  });
}

export function render(job: FigureJob): string {
  const spec = FIGURES[job.id];
  if (!spec) {
    throw new CsvError(job.id, "not a recognized figure id");
  }
  if (job.files.length === 0) {
    throw new CsvError(job.id, "no input CSV files");
  }
  const scene = buildFigure(spec, job.files);
  if (job.format === "png") {
    writeFileSync(job.outPath, sceneToPng(scene));
  } else {
    writeFileSync(job.outPath, sceneToSvg(scene), "utf-8");
  }
  return job.outPath;
}

export interface RenderAllResult {
  written: string[];
  warnings: string[];
}

export function renderAll(
  resultsDir: string,
  options: { format?: ImageFormat; only?: string } = {},
): RenderAllResult {
  const format = options.format ?? "svg";
  const entries = readdirSync(resultsDir).sort();
  const csvs = entries.filter((name) => name.endsWith(".csv"));

  const groups = new Map<string, string[]>();
  const warnings: string[] = [];
  for (const name of csvs) {
    const id = figureIdOf(name);
    if (id === null) {
      warnings.push(`skipped ${name}: not a recognized figure file`);
      continue;
    }
    const group = groups.get(id) ?? [];
    group.push(path.join(resultsDir, name));
    groups.set(id, group);
  }
  if (csvs.length === 0) {
    warnings.push(`no CSV files found in ${resultsDir}`);
  }

  const written: string[] = [];
  for (const [id, files] of [...groups.entries()].sort()) {
    if (options.only && id !== options.only) {
      continue;
    }
    const outPath = path.join(resultsDir, `${id}.${format}`);
    written.push(render({ id, files, outPath, format }));
  }
  return { written, warnings };
}
