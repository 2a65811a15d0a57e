/**
 * Per-(method, n) aggregation of the benchmark rows: mean and standard
 * deviation of log10(wce_sq) over trials.  Log first, then average --
 * the two orders disagree and the curves are defined on the log values.
 * Standard deviation is the population form (divide by the trial count).
 */

import { ResultRow } from "./csv";

export interface CurvePoint {
  n: number;
  mean: number; // mean of log10(wce_sq) over trials
  std: number; // population std of log10(wce_sq)
  trials: number;
}

export interface Curve {
  method: string;
  points: CurvePoint[]; // ascending n
}

export function aggregate(rows: ResultRow[]): Curve[] {
  // method order = first appearance in the file; n ascending within a method
  const byMethod = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    let groups = byMethod.get(row.method);
    if (!groups) {
      groups = new Map();
      byMethod.set(row.method, groups);
    }
    let logs = groups.get(row.n);
    if (!logs) {
      logs = [];
      groups.set(row.n, logs);
    }
    logs.push(Math.log10(row.wceSq));
  }

  const curves: Curve[] = [];
  for (const [method, groups] of byMethod) {
    const points: CurvePoint[] = [];
    for (const n of [...groups.keys()].sort((a, b) => a - b)) {
      const logs = groups.get(n)!;
      const mean = logs.reduce((acc, v) => acc + v, 0) / logs.length;
      const variance =
        logs.reduce((acc, v) => acc + (v - mean) * (v - mean), 0) / logs.length;
      points.push({ n, mean, std: Math.sqrt(variance), trials: logs.length });
    }
    curves.push({ method, points });
  }
  return curves;
}
