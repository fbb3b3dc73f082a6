/**
 * The sixteen recognized figure ids and how each one is drawn.
 *
 * A figure's data files are the CSVs in the results directory whose name
 * starts with "<id>_". Trajectory, pulse, and 1-d sweep files become line
 * plots (one series per column after the first); surface files become
 * heatmaps with the argmax cell annotated.
 */

export type PlotKind = "lines" | "heatmap";

export interface FigureSpec {
  id: string;
  kind: PlotKind;
  title: string;
  xLabel: string;
  yLabel: string;
}

const traj = (id: string, title: string): FigureSpec => ({
  id,
  kind: "lines",
  title,
  xLabel: "t / tf",
  yLabel: "population",
});

export const FIGURES: Record<string, FigureSpec> = {
  fig2a: traj("fig2a", "Full model vs bridge subsystem (deep coupling)"),
  fig2b: traj("fig2b", "Full model vs dark-state channel (slow drive)"),
  fig3a: traj("fig3a", "Bridge subsystem populations"),
  fig3b: traj("fig3b", "Dark-state channel populations"),
  fig3c: traj("fig3c", "Full-model populations at the quantized angle"),
  fig3d: {
    id: "fig3d",
    kind: "heatmap",
    title: "Transfer fidelity vs mixing angle and window",
    xLabel: "epsilon",
    yLabel: "lambda tf",
  },
  fig4a: {
    id: "fig4a",
    kind: "lines",
    title: "Engineered drive pair",
    xLabel: "t / tf",
    yLabel: "drive / lambda",
  },
  fig4b: traj("fig4b", "Two-atom populations at the headline point"),
  fig5a: traj("fig5a", "Intermediate-state populations (two-atom)"),
  fig5b: traj("fig5b", "Two-atom populations, longer window"),
  fig6a: {
    id: "fig6a",
    kind: "lines",
    title: "Fidelity vs spontaneous emission",
    xLabel: "gamma / lambda",
    yLabel: "fidelity",
  },
  fig6b: {
    id: "fig6b",
    kind: "lines",
    title: "Fidelity vs cavity decay",
    xLabel: "kappa / lambda",
    yLabel: "fidelity",
  },
  fig7a: {
    id: "fig7a",
    kind: "heatmap",
    title: "Two-atom fidelity vs decay rates",
    xLabel: "gamma / lambda",
    yLabel: "kappa / lambda",
  },
  fig7b: {
    id: "fig7b",
    kind: "heatmap",
    title: "Three-atom fidelity vs decay rates",
    xLabel: "gamma / lambda",
    yLabel: "kappa / lambda",
  },
  fig8a: traj("fig8a", "Three-atom populations at the headline point"),
  fig8b: traj("fig8b", "Intermediate-state populations (three-atom)"),
};

export const FIGURE_IDS = Object.keys(FIGURES);

/** "fig7a_surface.csv" -> "fig7a"; returns null for unrecognized names. */
export function figureIdOf(fileName: string): string | null {
  const stem = fileName.replace(/\.csv$/, "");
  const id = stem.split("_")[0];
  return id in FIGURES ? id : null;
}

/** "fig2a_subsystem_traj.csv" -> "subsystem"; "" when there is no variant. */
export function variantOf(fileName: string): string {
  const stem = fileName.replace(/\.csv$/, "");
  const parts = stem.split("_");
  const tail = new Set(["traj", "lines", "pulses", "surface"]);
  const middle = parts.slice(1).filter((p) => !tail.has(p));
  return middle.join("_");
}
