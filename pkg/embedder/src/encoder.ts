/**
 * Sentence encoders.
 *
 * The default is a pretrained transformer checkpoint run through
 * transformers.js feature extraction with mean pooling. For offline use and
 * deterministic tests, `hash-<dim>` selects a token-hashing encoder that maps
 * unigrams and bigrams into a fixed-size signed bucket space.
 */

export interface Encoder {
  readonly name: string;
  readonly dim: number | null; // null until the model reports it
  encode(texts: string[]): Promise<number[][]>;
}

export class ModelLoadError extends Error {}

export const DEFAULT_MODEL = "Xenova/all-mpnet-base-v2";

const HASH_NAME = /^hash-(\d+)$/;

/** FNV-1a over UTF-16 code units, kept in unsigned 32-bit space. */
function fnv1a(text: string, seed: number): number {
  let hash = (0x811c9dc5 ^ seed) >>> 0;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

function tokenize(text: string): string[] {
  return text.toLowerCase().split(/[^\p{L}\p{N}]+/u).filter(Boolean);
}

export class HashEncoder implements Encoder {
  readonly name: string;
  readonly dim: number;

  constructor(dim: number) {
    if (!Number.isInteger(dim) || dim < 2) {
      throw new ModelLoadError(`hash encoder dimension must be an integer >= 2, got ${dim}`);
    }
    this.name = `hash-${dim}`;
    this.dim = dim;
  }

  private accumulate(vector: number[], feature: string, weight: number): void {
    const bucket = fnv1a(feature, 0x9747b28c) % this.dim;
    const sign = fnv1a(feature, 0x85ebca6b) % 2 === 0 ? 1 : -1;
    vector[bucket] += sign * weight;
  }

  async encode(texts: string[]): Promise<number[][]> {
    return texts.map((text) => {
      const vector = new Array<number>(this.dim).fill(0);
      const tokens = tokenize(text);
      for (const token of tokens) {
        this.accumulate(vector, `u:${token}`, 1.0);
      }
      for (let i = 0; i + 1 < tokens.length; i++) {
        this.accumulate(vector, `b:${tokens[i]}_${tokens[i + 1]}`, 0.5);
      }
      if (tokens.length === 0) {
        // Keep tokenless sentences representable: a fixed direction.
        vector[0] = 1.0;
      }
      return vector;
    });
  }
}

export class TransformerEncoder implements Encoder {
  readonly name: string;
  dim: number | null = null;
  private pipelinePromise: Promise<unknown> | null = null;

  constructor(model: string = DEFAULT_MODEL) {
    this.name = model;
  }

  private async pipeline(): Promise<any> {
    if (!this.pipelinePromise) {
      this.pipelinePromise = (async () => {
        let pipelineFactory: any;
        // Resolved at runtime so the build does not require the optional package.
        const moduleName: string = "@xenova/transformers";
        try {
          ({ pipeline: pipelineFactory } = await import(moduleName));
        } catch (exc) {
          throw new ModelLoadError(
            `transformers.js is not available: ${(exc as Error).message}`,
          );
        }
        try {
          return await pipelineFactory("feature-extraction", this.name);
        } catch (exc) {
          throw new ModelLoadError(
            `cannot load model '${this.name}': ${(exc as Error).message}`,
          );
        }
      })();
    }
    return this.pipelinePromise;
  }

  async encode(texts: string[]): Promise<number[][]> {
    const extractor = await this.pipeline();
    const output = await extractor(texts, { pooling: "mean", normalize: true });
    const data = Array.from(output.data as Iterable<number>);
    const [batch, dim] = output.dims as [number, number];
    if (batch !== texts.length) {
      throw new ModelLoadError(`model returned ${batch} rows for ${texts.length} inputs`);
    }
    this.dim = dim;
    const rows: number[][] = [];
    for (let i = 0; i < batch; i++) {
      rows.push(data.slice(i * dim, (i + 1) * dim));
    }
    return rows;
  }
}

export function makeEncoder(model: string): Encoder {
  const match = HASH_NAME.exec(model);
  if (match) {
    return new HashEncoder(Number(match[1]));
  }
  return new TransformerEncoder(model);
}
