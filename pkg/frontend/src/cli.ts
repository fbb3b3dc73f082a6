#!/usr/bin/env node
/**
 * render-figures <results_dir> [--format svg|png] [--only <fig_id>]
 *
 * Renders every recognized figure CSV in the results directory into an
 * image next to the data. Unknown files are skipped with a warning;
 * malformed or empty CSVs abort with a nonzero exit.
 */

import { existsSync, statSync } from "fs";

import { CsvError } from "./csv.js";
import { FIGURE_IDS } from "./figures.js";
import { renderAll, type ImageFormat } from "./render.js";

const USAGE = "usage: render-figures <results_dir> [--format svg|png] [--only <fig_id>]";

export function main(argv: string[]): number {
  let dir: string | null = null;
  let format: ImageFormat = "svg";
  let only: string | undefined;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--format") {
      const value = argv[++i];
      if (value !== "svg" && value !== "png") {
        console.error(`error: --format must be svg or png, got ${value}`);
        return 2;
      }
      format = value;
    } else if (arg === "--only") {
      const value = argv[++i];
      if (!value || !FIGURE_IDS.includes(value)) {
        console.error(
          `error: --only expects one of ${FIGURE_IDS.join(", ")}, got ${value}`,
        );
        return 2;
      }
      only = value;
    } else if (arg === "-h" || arg === "--help") {
      console.log(USAGE);
      return 0;
    } else if (arg.startsWith("-")) {
      console.error(`error: unknown flag ${arg}\n${USAGE}`);
      return 2;
    } else if (dir === null) {
      dir = arg;
    } else {
      console.error(`error: unexpected argument ${arg}\n${USAGE}`);
      return 2;
    }
  }
  if (dir === null) {
    console.error(USAGE);
    return 2;
  }
  if (!existsSync(dir) || !statSync(dir).isDirectory()) {
    console.error(`error: ${dir} is not a directory`);
    return 1;
  }

  try {
    const { written, warnings } = renderAll(dir, { format, only });
    for (const warning of warnings) {
      console.warn(`warning: ${warning}`);
    }
    for (const file of written) {
      console.log(`wrote ${file}`);
    }
    if (only && written.length === 0) {
      console.error(`error: no CSV files for figure ${only} in ${dir}`);
      return 1;
    }
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
