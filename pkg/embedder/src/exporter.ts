/**
 * Batch export: encode every sentence of a cluster file and write one JSONL
 * object per cluster, vectors in the flattened document-major order.
 *
 * Rows are L2-normalized, reduced to float32, and serialized with six
 * decimals (fixed notation) so re-exports are bit-identical.
 */
import { writeFileSync } from "node:fs";

import { Cluster, InputError, loadClusters } from "./corpus.js";
import { DEFAULT_MODEL, Encoder, makeEncoder } from "./encoder.js";

export interface ExportJob {
  clustersPath: string;
  model: string;
  batchSize: number;
  outputPath: string;
}

export function defaultJob(partial: Partial<ExportJob> & { clustersPath: string; outputPath: string }): ExportJob {
  return { model: DEFAULT_MODEL, batchSize: 32, ...partial };
}

const NORM_TOLERANCE = 1e-6;

function normalize(row: number[]): number[] {
  let sumSquares = 0;
  for (const v of row) {
    if (!Number.isFinite(v)) {
      throw new InputError("encoder produced a non-finite value");
    }
    sumSquares += v * v;
  }
  const norm = Math.sqrt(sumSquares);
  if (norm === 0) {
    throw new InputError("encoder produced a zero vector");
  }
  return row.map((v) => Math.fround(v / norm));
}

/**
 * Quantize a unit vector to six decimals such that the *serialized* values
 * still have unit norm within tolerance.
 *
 * Plain rounding can drift the norm slightly past the tolerance, so work in
 * integer micro-units (1e-6 quanta, sums of squares exact in doubles) and
 * greedily nudge single components by one quantum toward a squared norm of
 * 1e12. The tolerance window is wider than any single-step change, so the
 * descent always lands inside it.
 */
function quantizeUnitRow(row: number[]): string[] {
  const micro = row.map((v) => Math.round(Number(v.toFixed(6)) * 1e6));
  const target = 1e12;
  const slack = 0.9 * NORM_TOLERANCE * 1e6; // stay strictly inside the tolerance
  const lo = Math.ceil((1e6 - slack) ** 2);
  const hi = Math.floor((1e6 + slack) ** 2);
  let sum = micro.reduce((s, u) => s + u * u, 0);
  let guard = 0;
  while ((sum < lo || sum > hi) && guard++ < 100_000) {
    let bestIndex = -1;
    let bestDelta = 0;
    let bestDistance = Math.abs(sum - target);
    for (let i = 0; i < micro.length; i++) {
      for (const delta of [1, -1]) {
        const distance = Math.abs(sum + 2 * micro[i] * delta + 1 - target);
        if (distance < bestDistance) {
          bestDistance = distance;
          bestIndex = i;
          bestDelta = delta;
        }
      }
    }
    if (bestIndex < 0) break; // no improving move left
    sum += 2 * micro[bestIndex] * bestDelta + 1;
    micro[bestIndex] += bestDelta;
  }
  if (sum < lo || sum > hi) {
    throw new InputError("could not quantize an embedding row to unit norm");
  }
  return micro.map((u) => (u / 1e6).toFixed(6));
}

function serializeRow(row: number[]): string {
  return `[${quantizeUnitRow(row).join(",")}]`;
}

export async function encodeCluster(cluster: Cluster, encoder: Encoder,
                                    batchSize: number): Promise<number[][]> {
  const texts = cluster.sentences.map((s) => s.text);
  const rows: number[][] = [];
  for (let start = 0; start < texts.length; start += batchSize) {
    const batch = await encoder.encode(texts.slice(start, start + batchSize));
    for (const row of batch) {
      rows.push(normalize(row));
    }
  }
  return rows;
}

/** One serialized JSONL line for a cluster's embedding rows. */
export function clusterLine(clusterId: string, rows: number[][]): string {
  const dim = rows[0].length;
  for (const row of rows) {
    if (row.length !== dim) {
      throw new InputError(`cluster ${clusterId}: inconsistent embedding dims`);
    }
  }
  const vectors = rows.map(serializeRow).join(",");
  return `{"cluster_id":${JSON.stringify(clusterId)},"dim":${dim},"vectors":[${vectors}]}`;
}

export async function exportEmbeddings(job: ExportJob): Promise<{ clusters: number; sentences: number }> {
  if (!Number.isInteger(job.batchSize) || job.batchSize < 1) {
    throw new InputError(`batch size must be a positive integer, got ${job.batchSize}`);
  }
  const clusters = loadClusters(job.clustersPath);
  const encoder = makeEncoder(job.model);
  const lines: string[] = [];
  let sentences = 0;
  for (const cluster of clusters) {
    const rows = await encodeCluster(cluster, encoder, job.batchSize);
    lines.push(clusterLine(cluster.id, rows));
    sentences += rows.length;
  }
  writeFileSync(job.outputPath, lines.join("\n") + "\n", "utf-8");
  return { clusters: clusters.length, sentences };
}
