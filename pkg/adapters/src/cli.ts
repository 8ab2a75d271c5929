#!/usr/bin/env node
import { parseArgs } from "node:util";

import { embedFile, skipReportPath } from "./embed.js";
import type { AdapterConfig, ProviderName } from "./types.js";

const PROVIDERS: ProviderName[] = [
  "local-word-averaging",
  "local-sentence-encoder",
  "http-embedding-api",
];

const USAGE = `usage: embed --in texts.ndjson --out vecs.ndjson
             [--provider local-word-averaging|local-sentence-encoder|http-embedding-api]
             [--model NAME] [--dim N] [--batch 64] [--concurrency 1]
             [--api-base URL] [--api-path /embeddings] [--retry-base-ms 500]

Input: NDJSON of {id, text, label?, timestamp?}. Output: NDJSON vector file
in driftscope's format; skipped records land in <out>.skips.ndjson.
API credentials come from EMBED_API_BASE / EMBED_API_KEY when flags are absent.`;

export async function run(argv: string[]): Promise<number> {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        provider: { type: "string", default: "local-word-averaging" },
        model: { type: "string" },
        dim: { type: "string" },
        batch: { type: "string", default: "64" },
        concurrency: { type: "string", default: "1" },
        "api-base": { type: "string" },
        "api-key": { type: "string" },
        "api-path": { type: "string" },
        "retry-base-ms": { type: "string" },
        help: { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  const values = parsed.values;
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.in || !values.out) {
    console.error("error: --in and --out are required");
    console.error(USAGE);
    return 2;
  }
  if (!PROVIDERS.includes(values.provider as ProviderName)) {
    console.error(`error: unknown provider ${values.provider}`);
    return 2;
  }

  const config: AdapterConfig = {
    provider: values.provider as ProviderName,
    modelName: values.model ?? "default",
    batchSize: Number(values.batch),
    concurrency: Number(values.concurrency),
  };
  if (values.dim !== undefined) {
    config.outputDim = Number(values.dim);
  }
  const apiBase = values["api-base"] ?? process.env.EMBED_API_BASE;
  const apiKey = values["api-key"] ?? process.env.EMBED_API_KEY;
  if (config.provider === "http-embedding-api") {
    config.apiBase = apiBase;
    config.apiKey = apiKey;
    config.apiPath = values["api-path"];
    if (values["retry-base-ms"] !== undefined) {
      config.retryBaseMs = Number(values["retry-base-ms"]);
    }
  }

  try {
    const result = await embedFile(values.in, values.out, config);
    console.error(
      `embed: wrote ${result.vectors.length} vectors (dim ${result.dim}) to ${values.out}` +
        (result.skipped.length > 0
          ? `, skipped ${result.skipped.length} (see ${skipReportPath(values.out)})`
          : ""),
    );
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
