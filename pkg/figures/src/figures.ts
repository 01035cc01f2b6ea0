/**
 * Figure assembly: which CSVs each figure consumes and how rows become
 * panels and series. Statistics are plotted as emitted; nothing is
 * re-aggregated here beyond grouping rows into lines.
 *
 * Encodings follow one shared role mapping: per-agent traces gray,
 * per-run means red, within-run variance black, cross-run grand means
 * purple (fig6 separates its four grand-mean series by dash pattern).
 */
import { existsSync } from "fs";
import { join } from "path";
import {
  HeatFigure,
  LineFigure,
  Panel,
  Series,
  renderHeatFigure,
  renderLineFigure,
} from "./chart";
import { InputError, readCsvRows, readMetadata } from "./csv";
import {
  AGENTS_HEADER,
  AgentRow,
  RUNS_HEADER,
  RunsRow,
  SCORES_HEADER,
  ScoresRow,
  SUMMARY_HEADER,
  SummaryRow,
  agentRowSchema,
  runsRowSchema,
  scoresRowSchema,
  summaryRowSchema,
} from "./schema";

export const FIGURE_IDS = ["fig1", "fig3", "fig4", "fig5", "fig6"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

const REQUIRED_FILES: Record<FigureId, string[]> = {
  fig1: ["scores.csv"],
  fig3: ["agents.csv"],
  fig4: ["agents.csv", "runs.csv"],
  fig5: ["runs.csv", "summary.csv"],
  fig6: ["summary.csv"],
};

/** number of example runs fig4 shows per condition */
const FIG4_RUNS = 3;

const byNumber = (a: number, b: number) => a - b;

function distinct<T>(values: Iterable<T>): T[] {
  return [...new Set(values)];
}

function seriesFrom(points: Array<[number, number]>, role: Series["role"]): Series {
  return { xs: points.map((p) => p[0]), ys: points.map((p) => p[1]), role };
}

function requireRows<T>(rows: T[], path: string): T[] {
  if (rows.length === 0) {
    throw new InputError(`${path}: no data rows`);
  }
  return rows;
}

function fig3(inDir: string): LineFigure {
  const path = join(inDir, "agents.csv");
  const rows = requireRows(
    readCsvRows(path, AGENTS_HEADER, agentRowSchema, (raw) => raw.agent === "0" || raw.agent === "1"),
    path
  );
  const conditions = distinct(rows.map((r) => r.condition)).sort();
  const condition = conditions.includes("NetworkUpdater") ? "NetworkUpdater" : conditions[0];
  const run = Math.min(...rows.filter((r) => r.condition === condition).map((r) => r.run));
  const trace = (agent: number, shade: string): Series => {
    const points = rows
      .filter((r) => r.condition === condition && r.run === run && r.agent === agent)
      .sort((a, b) => a.step - b.step)
      .map((r): [number, number] => [r.step, r.belief]);
    const s = seriesFrom(points, "agent");
    return { ...s, color: shade, width: 1.2 };
  };
  const panel: Panel = {
    title: `${condition}, run ${run}`,
    series: [trace(0, "#9aa0a6"), trace(1, "#5f6368")],
  };
  if (panel.series.some((s) => s.xs.length === 0)) {
    throw new InputError(`${path}: agents 0 and 1 not both present for ${condition} run ${run}`);
  }
  return {
    title: "Belief traces of two agents",
    panels: [panel],
    columns: 1,
    xLabel: "step",
    yLabel: "belief",
  };
}

function fig4(inDir: string): LineFigure {
  const agentsPath = join(inDir, "agents.csv");
  const runsPath = join(inDir, "runs.csv");
  const runsRows = requireRows(readCsvRows(runsPath, RUNS_HEADER, runsRowSchema), runsPath);
  const shownRuns = distinct(runsRows.map((r) => r.run)).sort(byNumber).slice(0, FIG4_RUNS);
  const runSet = new Set(shownRuns.map(String));
  const agentRows = requireRows(
    readCsvRows(agentsPath, AGENTS_HEADER, agentRowSchema, (raw) => runSet.has(raw.run)),
    agentsPath
  );
  const conditions = distinct(agentRows.map((r) => r.condition)).sort();
  const panels: Panel[] = [];
  for (const condition of conditions) {
    for (const run of shownRuns) {
      const mine = agentRows.filter((r) => r.condition === condition && r.run === run);
      const agents = distinct(mine.map((r) => r.agent)).sort(byNumber);
      const series: Series[] = agents.map((agent) =>
        seriesFrom(
          mine
            .filter((r) => r.agent === agent)
            .sort((a, b) => a.step - b.step)
            .map((r): [number, number] => [r.step, r.belief]),
          "agent"
        )
      );
      const stats = runsRows
        .filter((r) => r.condition === condition && r.run === run)
        .sort((a, b) => a.step - b.step);
      series.push(seriesFrom(stats.map((r) => [r.step, r.mean_belief]), "run-mean"));
      series.push(seriesFrom(stats.map((r) => [r.step, r.belief_variance]), "variance"));
      panels.push({ title: `${condition}, run ${run}`, series });
    }
  }
  return {
    title: "Per-run belief dynamics (gray: agents, red: mean, black: variance)",
    panels,
    columns: shownRuns.length,
    xLabel: "step",
    yLabel: "belief",
  };
}

function fig5(inDir: string): LineFigure {
  const runsPath = join(inDir, "runs.csv");
  const summaryPath = join(inDir, "summary.csv");
  const runsRows = requireRows(readCsvRows(runsPath, RUNS_HEADER, runsRowSchema), runsPath);
  const summaryRows = requireRows(
    readCsvRows(summaryPath, SUMMARY_HEADER, summaryRowSchema),
    summaryPath
  );
  const conditions = distinct(runsRows.map((r) => r.condition)).sort();
  const reliabilities = distinct(runsRows.map((r) => r.p_obj)).sort(byNumber);
  const panels: Panel[] = [];
  for (const condition of conditions) {
    for (const pObj of reliabilities) {
      const mine = runsRows.filter((r) => r.condition === condition && r.p_obj === pObj);
      const series: Series[] = distinct(mine.map((r) => r.run))
        .sort(byNumber)
        .map((run) =>
          seriesFrom(
            mine
              .filter((r) => r.run === run)
              .sort((a, b) => a.step - b.step)
              .map((r): [number, number] => [r.step, r.mean_belief]),
            "run-mean"
          )
        );
      const grand = summaryRows
        .filter((r) => r.condition === condition && r.p_obj === pObj)
        .sort((a, b) => a.step - b.step)
        .map((r): [number, number] => [r.step, r.grand_mean_belief]);
      series.push({ ...seriesFrom(grand, "grand-mean"), width: 2.0 });
      panels.push({
        title: `${condition}, reliability ${pObj}`,
        series,
      });
    }
  }
  return {
    title: "Run means (red) with the grand mean (purple)",
    panels,
    columns: Math.max(1, reliabilities.length),
    xLabel: "step",
    yLabel: "mean belief",
  };
}

const FIG6_DASHES = ["", "6,3", "2,2", "8,2,2,2"];

function fig6(inDir: string): LineFigure {
  const path = join(inDir, "summary.csv");
  const rows = requireRows(readCsvRows(path, SUMMARY_HEADER, summaryRowSchema), path);
  const reliabilities = distinct(rows.map((r) => r.p_obj)).sort(byNumber);
  const conditions = distinct(rows.map((r) => r.condition)).sort();
  const panels: Panel[] = reliabilities.map((pObj) => ({
    title: `reliability ${pObj}`,
    series: conditions.map((condition, i) => {
      const points = rows
        .filter((r) => r.condition === condition && r.p_obj === pObj)
        .sort((a, b) => a.step - b.step)
        .map((r): [number, number] => [r.step, r.grand_mean_belief]);
      return {
        ...seriesFrom(points, "grand-mean" as const),
        dash: FIG6_DASHES[i % FIG6_DASHES.length],
        label: condition,
      };
    }),
  }));
  return {
    title: `Grand-mean beliefs by strategy (${conditions.join(", ")})`,
    panels,
    columns: Math.min(4, Math.max(1, reliabilities.length)),
    xLabel: "step",
    yLabel: "grand mean belief",
  };
}

function fig1(inDir: string): HeatFigure {
  const path = join(inDir, "scores.csv");
  const rows = requireRows(readCsvRows(path, SCORES_HEADER, scoresRowSchema), path);
  const conditions = distinct(rows.map((r) => r.condition)).sort();
  const panels = conditions.map((condition) => {
    const mine = rows.filter((r) => r.condition === condition);
    const xs = distinct(mine.map((r) => r.p_obj)).sort(byNumber);
    const ys = distinct(mine.map((r) => r.base_rate)).sort(byNumber);
    const values = ys.map((b) =>
      xs.map((p) => {
        const cell = mine.find((r) => r.p_obj === p && r.base_rate === b);
        if (!cell) {
          throw new InputError(`${path}: missing cell p_obj=${p}, base_rate=${b} for ${condition}`);
        }
        return cell.mean_brier;
      })
    );
    return { title: condition, xs, ys, values };
  });
  return {
    title: "Mean squared error by reliability and base rate",
    panels,
    columns: Math.min(3, panels.length),
    xLabel: "objective reliability",
    yLabel: "base rate",
  };
}

export function renderFigure(figure: FigureId, inDir: string): string {
  readMetadata(inDir); // presence + schema check: refuse undocumented inputs
  switch (figure) {
    case "fig1":
      return renderHeatFigure(fig1(inDir));
    case "fig3":
      return renderLineFigure(fig3(inDir));
    case "fig4":
      return renderLineFigure(fig4(inDir));
    case "fig5":
      return renderLineFigure(fig5(inDir));
    case "fig6":
      return renderLineFigure(fig6(inDir));
  }
}

export function renderableFigures(inDir: string): FigureId[] {
  return FIGURE_IDS.filter((figure) =>
    REQUIRED_FILES[figure].every((name) => existsSync(join(inDir, name)))
  );
}
