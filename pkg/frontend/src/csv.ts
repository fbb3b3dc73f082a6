/**
 * Strict CSV reading for the simulator's output files.
 *
 * All files share the shape: one header line naming the columns, then purely
 * numeric rows. Trajectory/lines files put the running axis in the first
 * column; surface files are exactly (axis1, axis2, fidelity) in row-major
 * order with axis1 outer.
 */

import { readFileSync } from "fs";

export class CsvError extends Error {
  constructor(
    public readonly file: string,
    detail: string,
  ) {
    super(`${file}: ${detail}`);
    this.name = "CsvError";
  }
}

export interface Table {
  file: string;
  header: string[];
  /** rows[i][j] is the numeric value of column j in data row i */
  rows: number[][];
}

export function parseCsv(text: string, file: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError(file, "file is empty (no header)");
  }
  const header = lines[0].split(",");
  if (header.length < 2) {
    throw new CsvError(file, `expected at least two columns, got ${header.length}`);
  }
  if (lines.length === 1) {
    throw new CsvError(file, "no data rows");
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvError(
        file,
        `row ${i} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    const row = cells.map((cell, j) => {
      const value = Number(cell);
      if (cell.trim() === "" || Number.isNaN(value)) {
        throw new CsvError(
          file,
          `row ${i}, column "${header[j]}": not a number (${JSON.stringify(cell)})`,
        );
      }
      return value;
    });
    rows.push(row);
  }
  return { file, header, rows };
}

export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvError(path, `cannot read file (${(err as Error).message})`);
  }
  return parseCsv(text, path);
}

export function column(table: Table, index: number): number[] {
  return table.rows.map((row) => row[index]);
}

export interface Surface {
  xName: string;
  yName: string;
  /** strictly increasing axis values */
  xValues: number[];
  yValues: number[];
  /** cells[i][j] is the value at (xValues[i], yValues[j]) */
  cells: number[][];
  max: { x: number; y: number; value: number };
}

/** Reshape a row-major (axis1, axis2, value) table into a dense surface. */
export function asSurface(table: Table): Surface {
  if (table.header.length !== 3) {
    throw new CsvError(
      table.file,
      `surface needs exactly 3 columns (axis1, axis2, value), got ${table.header.length}`,
    );
  }
  const xValues = uniqueSorted(column(table, 0));
  const yValues = uniqueSorted(column(table, 1));
  if (xValues.length * yValues.length !== table.rows.length) {
    throw new CsvError(
      table.file,
      `rows (${table.rows.length}) do not form a full ${xValues.length}x${yValues.length} grid`,
    );
  }
  const cells: number[][] = xValues.map(() => new Array(yValues.length).fill(NaN));
  let best = { x: xValues[0], y: yValues[0], value: -Infinity };
  for (const [x, y, value] of table.rows) {
    const i = xValues.indexOf(x);
    const j = yValues.indexOf(y);
    cells[i][j] = value;
    if (value > best.value) {
      best = { x, y, value };
    }
  }
  return {
    xName: table.header[0],
    yName: table.header[1],
    xValues,
    yValues,
    cells,
    max: best,
  };
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}
