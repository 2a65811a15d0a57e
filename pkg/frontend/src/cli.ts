#!/usr/bin/env node
/**
 * render_plots --csv <path> --figure <id> --out <path>
 *
 * Writes the PNG at --out and an .svg sibling.  Exit codes: 0 success,
 * 2 bad arguments / malformed or unusable input.
 */

import { DataError, SchemaError } from "./csv";
import { render } from "./render";

const USAGE = "usage: render_plots --csv <path> --figure <id> --out <path>";

export function main(argv: string[]): number {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      console.error(`unexpected argument: ${arg}\n${USAGE}`);
      return 2;
    }
    const key = arg.slice(2);
    if (!["csv", "figure", "out"].includes(key)) {
      console.error(`unknown option: ${arg}\n${USAGE}`);
      return 2;
    }
    const value = argv[++i];
    if (value === undefined) {
      console.error(`missing value for ${arg}\n${USAGE}`);
      return 2;
    }
    opts.set(key, value);
  }
  const missing = ["csv", "figure", "out"].filter((k) => !opts.has(k));
  if (missing.length > 0) {
    console.error(`missing required option(s): ${missing.map((k) => "--" + k).join(", ")}\n${USAGE}`);
    return 2;
  }

  try {
    const result = render({
      csvPath: opts.get("csv")!,
      figure: opts.get("figure")!,
      outPath: opts.get("out")!,
    });
    console.log(`wrote ${result.pngPath} and ${result.svgPath} (${result.methods.length} methods)`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError || err instanceof DataError) {
      console.error(`input error: ${err.message}`);
      return 2;
    }
    if (err instanceof Error && (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`input error: ${err.message}`);
      return 2;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
