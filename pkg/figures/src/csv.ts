/**
 * Streaming CSV ingestion with verbatim header checks.
 *
 * Agent-level files can run to a million rows; rows are filtered while
 * streaming so only what a figure actually plots is materialized.
 */
import { readFileSync } from "fs";
import { join } from "path";
import Papa from "papaparse";
import { ZodType } from "zod";
import { Metadata, metadataSchema } from "./schema";

export class InputError extends Error {}

export function readCsvRows<T>(
  path: string,
  header: readonly string[],
  rowSchema: ZodType<T>,
  prefilter?: (raw: Record<string, string>) => boolean
): T[] {
  let content: string;
  try {
    content = readFileSync(path, "utf-8");
  } catch (err) {
    throw new InputError(`cannot read ${path}: ${(err as Error).message}`);
  }
  if (content.trim() === "") {
    throw new InputError(`${path}: file is empty (missing header row)`);
  }
  // the emitter never quotes fields, so the header line splits verbatim
  const fields = content.slice(0, content.indexOf("\n") + 1 || undefined).trim().split(",");
  if (fields.length !== header.length || header.some((h, i) => fields[i] !== h)) {
    throw new InputError(
      `${path}: header [${fields.join(",")}] does not match expected [${header.join(",")}]`
    );
  }
  const rows: T[] = [];
  let rowError: InputError | null = null;
  Papa.parse<Record<string, string>>(content, {
    header: true,
    skipEmptyLines: true,
    step: (result, parser) => {
      if (rowError) {
        parser.abort();
        return;
      }
      const raw = result.data;
      if (prefilter && !prefilter(raw)) {
        return;
      }
      const parsed = rowSchema.safeParse(raw);
      if (!parsed.success) {
        rowError = new InputError(
          `${path}: bad row ${JSON.stringify(raw)}: ${parsed.error.issues[0]?.message}`
        );
        parser.abort();
        return;
      }
      rows.push(parsed.data);
    },
  });
  if (rowError) {
    throw rowError;
  }
  return rows;
}

export function readMetadata(inDir: string): Metadata {
  const path = join(inDir, "metadata.json");
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new InputError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = metadataSchema.safeParse(raw);
  if (!parsed.success) {
    throw new InputError(`${path}: ${parsed.error.issues[0]?.message}`);
  }
  return parsed.data;
}
