import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";
import { InputError, readCsvRows, readMetadata } from "../src/csv";
import { AGENTS_HEADER, agentRowSchema } from "../src/schema";
import { writeFixtureDir } from "./fixtures";

function tmpFile(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "csv-"));
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

describe("readCsvRows", () => {
  it("reads conformant rows in order", () => {
    const path = tmpFile(
      "agents.csv",
      "condition,run,step,agent,belief,world_trust\nA,0,0,0,0.5,0.66\nA,0,1,0,0.6,0.66\n"
    );
    const rows = readCsvRows(path, AGENTS_HEADER, agentRowSchema);
    expect(rows).toHaveLength(2);
    expect(rows[1].belief).toBeCloseTo(0.6, 12);
  });

  it("applies the prefilter before parsing", () => {
    const path = tmpFile(
      "agents.csv",
      "condition,run,step,agent,belief,world_trust\nA,0,0,0,0.5,0.66\nA,1,0,0,0.6,0.66\n"
    );
    const rows = readCsvRows(path, AGENTS_HEADER, agentRowSchema, (raw) => raw.run === "0");
    expect(rows).toHaveLength(1);
  });

  it("rejects a header that does not match the documented schema", () => {
    const path = tmpFile(
      "agents.csv",
      "condition,run,step,agent,credence,world_trust\nA,0,0,0,0.5,0.66\n"
    );
    expect(() => readCsvRows(path, AGENTS_HEADER, agentRowSchema)).toThrow(InputError);
    expect(() => readCsvRows(path, AGENTS_HEADER, agentRowSchema)).toThrow(/header/);
  });

  it("rejects malformed rows with the offending content", () => {
    const path = tmpFile(
      "agents.csv",
      "condition,run,step,agent,belief,world_trust\nA,0,0,0,not-a-number,0.66\n"
    );
    expect(() => readCsvRows(path, AGENTS_HEADER, agentRowSchema)).toThrow(/bad row/);
  });

  it("rejects a truly empty file", () => {
    const path = tmpFile("agents.csv", "");
    expect(() => readCsvRows(path, AGENTS_HEADER, agentRowSchema)).toThrow(/empty/);
  });

  it("reports unreadable paths", () => {
    expect(() => readCsvRows("/nonexistent/x.csv", AGENTS_HEADER, agentRowSchema)).toThrow(
      /cannot read/
    );
  });
});

describe("readMetadata", () => {
  it("parses the fixture metadata", () => {
    const dir = writeFixtureDir();
    expect(readMetadata(dir).generator).toBe("epitrust");
  });

  it("fails on a directory without metadata.json", () => {
    const dir = mkdtempSync(join(tmpdir(), "csv-"));
    expect(() => readMetadata(dir)).toThrow(/cannot read/);
  });
});
