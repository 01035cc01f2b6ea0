/**
 * Row schemas for the simulator's CSV outputs and metadata.json.
 *
 * Every reader validates the header verbatim and each row through zod, so
 * a schema drift in the producing pipeline fails loudly here instead of
 * rendering garbage.
 */
import { z } from "zod";

const finite = z.coerce.number().finite();
const probability = finite.refine((v) => v >= 0 && v <= 1, {
  message: "expected a probability in [0, 1]",
});
const index = z.coerce.number().int().nonnegative();

export const AGENTS_HEADER = [
  "condition",
  "run",
  "step",
  "agent",
  "belief",
  "world_trust",
] as const;

export const agentRowSchema = z.object({
  condition: z.string().min(1),
  run: index,
  step: index,
  agent: index,
  belief: probability,
  world_trust: probability,
});
export type AgentRow = z.infer<typeof agentRowSchema>;

export const RUNS_HEADER = [
  "condition",
  "p_obj",
  "run",
  "step",
  "mean_belief",
  "belief_variance",
  "mean_world_trust",
] as const;

export const runsRowSchema = z.object({
  condition: z.string().min(1),
  p_obj: probability,
  run: index,
  step: index,
  mean_belief: probability,
  belief_variance: finite.refine((v) => v >= 0, { message: "variance must be >= 0" }),
  mean_world_trust: probability,
});
export type RunsRow = z.infer<typeof runsRowSchema>;

export const SUMMARY_HEADER = [
  "condition",
  "p_obj",
  "step",
  "grand_mean_belief",
  "between_run_variance",
] as const;

export const summaryRowSchema = z.object({
  condition: z.string().min(1),
  p_obj: probability,
  step: index,
  grand_mean_belief: probability,
  between_run_variance: finite.refine((v) => v >= 0, { message: "variance must be >= 0" }),
});
export type SummaryRow = z.infer<typeof summaryRowSchema>;

export const SCORES_HEADER = [
  "condition",
  "p_obj",
  "base_rate",
  "mean_brier",
  "mean_abs_error",
] as const;

export const scoresRowSchema = z.object({
  condition: z.string().min(1),
  p_obj: probability,
  base_rate: probability,
  mean_brier: probability,
  mean_abs_error: probability,
});
export type ScoresRow = z.infer<typeof scoresRowSchema>;

export const metadataSchema = z
  .object({
    schema: z.literal(1),
    generator: z.string(),
    version: z.string(),
    preset: z.string().nullable(),
    master_seed: z.number().int().nonnegative(),
  })
  .passthrough();
export type Metadata = z.infer<typeof metadataSchema>;
