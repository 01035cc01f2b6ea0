import { describe, expect, it } from "vitest";
import {
  agentRowSchema,
  metadataSchema,
  runsRowSchema,
  summaryRowSchema,
} from "../src/schema";

describe("row schemas", () => {
  it("coerces numeric strings from the CSV layer", () => {
    const row = agentRowSchema.parse({
      condition: "ShadowFixed",
      run: "3",
      step: "0",
      agent: "12",
      belief: "0.66",
      world_trust: "0.5",
    });
    expect(row.run).toBe(3);
    expect(row.belief).toBeCloseTo(0.66, 12);
  });

  it("rejects beliefs outside the unit interval", () => {
    expect(
      agentRowSchema.safeParse({
        condition: "X",
        run: "0",
        step: "0",
        agent: "0",
        belief: "1.5",
        world_trust: "0.5",
      }).success
    ).toBe(false);
  });

  it("rejects negative variance and fractional indices", () => {
    expect(
      runsRowSchema.safeParse({
        condition: "X",
        p_obj: "0.66",
        run: "0",
        step: "1",
        mean_belief: "0.5",
        belief_variance: "-0.1",
        mean_world_trust: "0.5",
      }).success
    ).toBe(false);
    expect(
      summaryRowSchema.safeParse({
        condition: "X",
        p_obj: "0.66",
        step: "1.5",
        grand_mean_belief: "0.5",
        between_run_variance: "0",
      }).success
    ).toBe(false);
  });

  it("accepts current metadata and rejects unknown schema versions", () => {
    const base = {
      schema: 1,
      generator: "epitrust",
      version: "0.1.0",
      preset: null,
      master_seed: 0,
    };
    expect(metadataSchema.safeParse(base).success).toBe(true);
    expect(metadataSchema.safeParse({ ...base, schema: 2 }).success).toBe(false);
  });
});
