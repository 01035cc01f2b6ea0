#!/usr/bin/env node
/**
 * render-figures --in <dir> --out <dir> [--figure figN ...]
 *
 * Renders SVG figure analogues from a simulation output directory.
 * Without --figure, renders everything the directory's files support.
 * Exits nonzero with a message on any problem; an output file is only
 * written once its SVG rendered completely.
 */
import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { FIGURE_IDS, FigureId, renderFigure, renderableFigures } from "./figures";

export interface CliOptions {
  in: string;
  out: string;
  figure?: string[];
}

export function run(options: CliOptions): string[] {
  const requested = (options.figure?.length ? options.figure : renderableFigures(options.in)) as FigureId[];
  if (requested.length === 0) {
    throw new Error(
      `${options.in}: no renderable figures (expected agents.csv / runs.csv / summary.csv / scores.csv)`
    );
  }
  for (const figure of requested) {
    if (!FIGURE_IDS.includes(figure)) {
      throw new Error(`unknown figure "${figure}"; valid: ${FIGURE_IDS.join(", ")}`);
    }
  }
  const rendered = requested.map((figure) => [figure, renderFigure(figure, options.in)] as const);
  mkdirSync(options.out, { recursive: true });
  const written: string[] = [];
  for (const [figure, svg] of rendered) {
    const path = join(options.out, `${figure}.svg`);
    writeFileSync(path, svg, "utf-8");
    written.push(path);
  }
  return written;
}

export function main(argv: string[]): number {
  const parsed = yargs(argv)
    .scriptName("render-figures")
    .option("in", { type: "string", demandOption: true, describe: "simulation output directory" })
    .option("out", { type: "string", demandOption: true, describe: "directory for SVG files" })
    .option("figure", {
      type: "string",
      array: true,
      choices: [...FIGURE_IDS],
      describe: "figures to render (default: all the inputs support)",
    })
    .strict()
    .exitProcess(false)
    .parseSync();
  try {
    for (const path of run({ in: parsed.in, out: parsed.out, figure: parsed.figure })) {
      console.log(path);
    }
    return 0;
  } catch (err) {
    console.error(`render-figures: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
