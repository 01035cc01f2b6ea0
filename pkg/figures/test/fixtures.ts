import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

export const CONDITIONS = ["NetworkFixed", "NetworkUpdater", "ShadowFixed", "ShadowUpdater"];

export interface FixtureOptions {
  conditions?: string[];
  runs?: number;
  steps?: number;
  agents?: number;
  pObjs?: number[];
  baseRates?: number[];
  files?: string[]; // which CSVs to write; default all
}

const defaults = {
  conditions: CONDITIONS,
  runs: 4,
  steps: 5,
  agents: 3,
  pObjs: [0.66],
  baseRates: [0.5],
  files: ["agents", "runs", "summary", "scores"],
};

function belief(condition: string, run: number, step: number, agent: number): number {
  // deterministic, bounded away from the limits
  const raw = 0.3 + 0.05 * agent + 0.04 * step + 0.02 * run + 0.01 * condition.length;
  return Math.min(0.95, raw);
}

export function writeFixtureDir(options: FixtureOptions = {}): string {
  const opt = { ...defaults, ...options };
  const dir = mkdtempSync(join(tmpdir(), "figfix-"));
  const meta = {
    schema: 1,
    generator: "epitrust",
    version: "0.1.0",
    preset: null,
    master_seed: 0,
  };
  writeFileSync(join(dir, "metadata.json"), JSON.stringify(meta, null, 2));

  if (opt.files.includes("agents")) {
    const lines = ["condition,run,step,agent,belief,world_trust"];
    for (const condition of opt.conditions) {
      for (let run = 0; run < opt.runs; run++) {
        for (let step = 0; step < opt.steps; step++) {
          for (let agent = 0; agent < opt.agents; agent++) {
            lines.push(
              `${condition},${run},${step},${agent},${belief(condition, run, step, agent)},0.66`
            );
          }
        }
      }
    }
    writeFileSync(join(dir, "agents.csv"), lines.join("\n") + "\n");
  }

  if (opt.files.includes("runs")) {
    const lines = ["condition,p_obj,run,step,mean_belief,belief_variance,mean_world_trust"];
    for (const condition of opt.conditions) {
      for (const pObj of opt.pObjs) {
        for (let run = 0; run < opt.runs; run++) {
          for (let step = 0; step < opt.steps; step++) {
            lines.push(
              `${condition},${pObj},${run},${step},${belief(condition, run, step, 1)},0.01,0.66`
            );
          }
        }
      }
    }
    writeFileSync(join(dir, "runs.csv"), lines.join("\n") + "\n");
  }

  if (opt.files.includes("summary")) {
    const lines = ["condition,p_obj,step,grand_mean_belief,between_run_variance"];
    for (const condition of opt.conditions) {
      for (const pObj of opt.pObjs) {
        for (let step = 0; step < opt.steps; step++) {
          lines.push(`${condition},${pObj},${step},${belief(condition, 0, step, 1)},0.004`);
        }
      }
    }
    writeFileSync(join(dir, "summary.csv"), lines.join("\n") + "\n");
  }

  if (opt.files.includes("scores")) {
    const lines = ["condition,p_obj,base_rate,mean_brier,mean_abs_error"];
    for (const condition of opt.conditions) {
      for (const pObj of opt.pObjs) {
        for (const baseRate of opt.baseRates) {
          lines.push(`${condition},${pObj},${baseRate},${0.1 + 0.2 * pObj},0.3`);
        }
      }
    }
    writeFileSync(join(dir, "scores.csv"), lines.join("\n") + "\n");
  }

  return dir;
}

export function count(svg: string, needle: string): number {
  return svg.split(needle).length - 1;
}
