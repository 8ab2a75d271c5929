import { rename, rm } from "node:fs/promises";

import { readTextRecords, vectorRecordLine, writeNdjson } from "./ndjson.js";
import { httpProvider, probeHttpDim } from "./providers/http.js";
import { sentenceEncoderProvider, wordAveragingProvider } from "./providers/local.js";
import {
  type AdapterConfig,
  type EmbedProvider,
  type SkipEntry,
  type TextRecord,
  type VectorRecord,
  validateConfig,
} from "./types.js";

export async function makeProvider(config: AdapterConfig): Promise<EmbedProvider> {
  validateConfig(config);
  switch (config.provider) {
    case "local-word-averaging":
      return wordAveragingProvider(config.modelName);
    case "local-sentence-encoder":
      return sentenceEncoderProvider(config.modelName);
    case "http-embedding-api":
      return httpProvider(config, await probeHttpDim(config));
  }
}

function chunk<T>(items: T[], size: number): T[][] {
  const out: T[][] = [];
  for (let i = 0; i < items.length; i += size) {
    out.push(items.slice(i, i + size));
  }
  return out;
}

async function mapBatches(
  batches: string[][],
  provider: EmbedProvider,
  concurrency: number,
): Promise<number[][][]> {
  const results = new Array<number[][]>(batches.length);
  let next = 0;
  const workers = Array.from(
    { length: Math.min(concurrency, Math.max(batches.length, 1)) },
    async () => {
      while (next < batches.length) {
        const index = next;
        next += 1;
        results[index] = await provider.embedBatch(batches[index]!);
      }
    },
  );
  await Promise.all(workers);
  return results;
}

export interface EmbedResult {
  vectors: VectorRecord[];
  skipped: SkipEntry[];
  dim: number;
}

/**
 * Embed every record with a non-empty text, in input order. Records with
 * empty text are skipped and reported rather than failing the run.
 */
export async function embedCorpus(
  records: TextRecord[],
  config: AdapterConfig,
  provider?: EmbedProvider,
): Promise<EmbedResult> {
  const active = provider ?? (await makeProvider(config));
  const outputDim = config.outputDim ?? active.dim;
  if (outputDim > active.dim) {
    throw new Error(
      `output dim ${outputDim} exceeds provider dimension ${active.dim}`,
    );
  }

  const skipped: SkipEntry[] = [];
  const usable: TextRecord[] = [];
  for (const record of records) {
    if (record.text.trim() === "") {
      console.warn(`warning: skipping record ${record.id}: empty text`);
      skipped.push({ id: record.id, reason: "empty text" });
    } else {
      usable.push(record);
    }
  }

  const batches = chunk(
    usable.map((r) => r.text),
    config.batchSize,
  );
  const embedded = await mapBatches(batches, active, config.concurrency ?? 1);

  const vectors: VectorRecord[] = [];
  let cursor = 0;
  for (const batch of embedded) {
    for (const vec of batch) {
      const source = usable[cursor]!;
      cursor += 1;
      const out: VectorRecord = {
        id: source.id,
        vector: outputDim === active.dim ? vec : vec.slice(0, outputDim),
      };
      if (source.label !== undefined) {
        out.label = source.label;
      }
      if (source.timestamp !== undefined) {
        out.timestamp = source.timestamp;
      }
      vectors.push(out);
    }
  }
  return { vectors, skipped, dim: outputDim };
}

export function skipReportPath(outPath: string): string {
  return `${outPath}.skips.ndjson`;
}

/**
 * File-level pipeline: read texts, embed, then write the vector file
 * atomically (temp file + rename) so a provider failure never leaves a
 * partial output behind. Skipped records go to a sidecar report.
 */
export async function embedFile(
  inPath: string,
  outPath: string,
  config: AdapterConfig,
  provider?: EmbedProvider,
): Promise<EmbedResult> {
  const records = await readTextRecords(inPath);
  const tmpPath = `${outPath}.tmp`;
  try {
    const result = await embedCorpus(records, config, provider);
    await writeNdjson(tmpPath, result.vectors.map(vectorRecordLine));
    await rename(tmpPath, outPath);
    if (result.skipped.length > 0) {
      await writeNdjson(
        skipReportPath(outPath),
        result.skipped.map((s) => JSON.stringify(s)),
      );
    }
    return result;
  } catch (err) {
    // the real output is only ever renamed into place after success, so
    // cleaning the temp file is enough to guarantee no partial output
    await rm(tmpPath, { force: true });
    throw err;
  }
}
