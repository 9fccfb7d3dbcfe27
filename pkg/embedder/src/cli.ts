#!/usr/bin/env node
/**
 * export-embeddings --clusters PATH --model NAME --batch-size B --output PATH
 */
import { InputError } from "./corpus.js";
import { DEFAULT_MODEL, ModelLoadError } from "./encoder.js";
import { exportEmbeddings } from "./exporter.js";

const USAGE = `usage: export-embeddings --clusters PATH [--model NAME] [--batch-size B] --output PATH

Encode every sentence of a cluster JSONL file and write one embedding object
per cluster (vectors in document-major sentence order, unit L2 norm).

options:
  --clusters PATH    cluster JSONL file (same schema as the summarizer reads)
  --model NAME       transformers.js model id (default ${DEFAULT_MODEL})
                     or hash-<dim> for the deterministic offline encoder
  --batch-size B     sentences encoded per model call (default 32)
  --output PATH      embedding JSONL to write
`;

function parseArgs(argv: string[]): { clusters?: string; model: string; batchSize: number; output?: string } {
  const options = { model: DEFAULT_MODEL, batchSize: 32 } as ReturnType<typeof parseArgs>;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new InputError(`missing value for ${flag}`);
      return argv[i];
    };
    switch (flag) {
      case "--clusters":
        options.clusters = next();
        break;
      case "--model":
        options.model = next();
        break;
      case "--batch-size": {
        const raw = next();
        options.batchSize = Number(raw);
        if (!Number.isInteger(options.batchSize) || options.batchSize < 1) {
          throw new InputError(`--batch-size must be a positive integer, got '${raw}'`);
        }
        break;
      }
      case "--output":
        options.output = next();
        break;
      case "--help":
      case "-h":
        process.stdout.write(USAGE);
        process.exit(0);
      default:
        throw new InputError(`unknown flag: ${flag}`);
    }
  }
  return options;
}

export async function main(argv: string[]): Promise<number> {
  try {
    const options = parseArgs(argv);
    if (!options.clusters || !options.output) {
      throw new InputError("--clusters and --output are required (see --help)");
    }
    const stats = await exportEmbeddings({
      clustersPath: options.clusters,
      model: options.model,
      batchSize: options.batchSize,
      outputPath: options.output,
    });
    process.stderr.write(
      `wrote embeddings for ${stats.clusters} cluster(s), ${stats.sentences} sentence(s)\n`,
    );
    return 0;
  } catch (exc) {
    if (exc instanceof InputError || exc instanceof ModelLoadError) {
      process.stderr.write(`error: ${exc.message}\n`);
      return 1;
    }
    throw exc;
  }
}

import { pathToFileURL } from "node:url";

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  main(process.argv.slice(2)).then((code) => process.exit(code));
}
