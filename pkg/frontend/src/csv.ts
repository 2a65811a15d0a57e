/**
 * Parser for the benchmark harness CSV.
 *
 * Expected header (column order free, extra columns ignored):
 *   figure,method,d,r,n,N,trial,seed,wce_sq,runtime_ms
 * Lines starting with '#' are comments (the harness emits an
 * optional "# rtol=..." line before the header) and are skipped.
 */

export interface ResultRow {
  figure: string;
  method: string;
  d: number;
  r: number;
  n: number;
  N: number;
  trial: number;
  seed: string; // may exceed 2^53, never used numerically
  wceSq: number;
  runtimeMs: number;
}

/** Header or column-structure problem; message names the offending columns. */
export class SchemaError extends Error {}

/** A well-formed file containing an unusable value. */
export class DataError extends Error {}

const REQUIRED = [
  "figure", "method", "d", "r", "n", "N", "trial", "seed", "wce_sq", "runtime_ms",
] as const;

function splitLines(text: string): string[] {
  return text.split("\n").map((l) => (l.endsWith("\r") ? l.slice(0, -1) : l));
}

function parseIntStrict(s: string, col: string, line: number): number {
  const v = Number(s);
  if (!Number.isInteger(v)) {
    throw new DataError(`line ${line}: column ${col} is not an integer: ${JSON.stringify(s)}`);
  }
  return v;
}

export function parseResults(text: string): ResultRow[] {
  const lines = splitLines(text);
  let i = 0;
  while (i < lines.length && (lines[i].trim() === "" || lines[i].startsWith("#"))) i++;
  if (i === lines.length) {
    throw new SchemaError("empty file: no header line found");
  }

  const names = lines[i].split(",").map((s) => s.trim());
  const col = new Map<string, number>();
  names.forEach((name, idx) => {
    if (!col.has(name)) col.set(name, idx);
  });
  const missing = REQUIRED.filter((name) => !col.has(name));
  if (missing.length > 0) {
    throw new SchemaError(`missing column(s): ${missing.join(", ")}`);
  }
  const at = (fields: string[], name: string) => fields[col.get(name)!];

  const rows: ResultRow[] = [];
  for (i++; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "" || line.startsWith("#")) continue;
    const fields = line.split(",");
    if (fields.length < names.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${names.length} fields, got ${fields.length}`
      );
    }
    const wceSq = Number(at(fields, "wce_sq"));
    if (!Number.isFinite(wceSq) || wceSq <= 0) {
      throw new DataError(`line ${i + 1}: wce_sq must be a positive number, got ${JSON.stringify(at(fields, "wce_sq"))}`);
    }
    rows.push({
      figure: at(fields, "figure"),
      method: at(fields, "method"),
      d: parseIntStrict(at(fields, "d"), "d", i + 1),
      r: parseIntStrict(at(fields, "r"), "r", i + 1),
      n: parseIntStrict(at(fields, "n"), "n", i + 1),
      N: parseIntStrict(at(fields, "N"), "N", i + 1),
      trial: parseIntStrict(at(fields, "trial"), "trial", i + 1),
      seed: at(fields, "seed"),
      wceSq,
      runtimeMs: Number(at(fields, "runtime_ms")),
    });
  }
  return rows;
}
