export type ProviderName =
  | "local-sentence-encoder"
  | "local-word-averaging"
  | "http-embedding-api";

export interface AdapterConfig {
  provider: ProviderName;
  modelName: string;
  batchSize: number;
  outputDim?: number;
  concurrency?: number;
  apiBase?: string;
  apiKey?: string;
  apiPath?: string;
  retryBaseMs?: number;
  maxAttempts?: number;
}

export interface TextRecord {
  id: string;
  text: string;
  label?: string;
  timestamp?: number;
}

export interface VectorRecord {
  id: string;
  vector: number[];
  label?: string;
  timestamp?: number;
}

export interface SkipEntry {
  id: string;
  reason: string;
}

export interface EmbedProvider {
  readonly name: string;
  readonly dim: number;
  embedBatch(texts: string[]): Promise<number[][]>;
}

export function validateConfig(config: AdapterConfig): void {
  if (config.batchSize < 1) {
    throw new Error(`batchSize must be >= 1, got ${config.batchSize}`);
  }
  if (config.concurrency !== undefined && config.concurrency < 1) {
    throw new Error(`concurrency must be >= 1, got ${config.concurrency}`);
  }
  if (config.provider === "http-embedding-api") {
    if (!config.apiBase) {
      throw new Error(
        "http-embedding-api requires an API base URL (--api-base or EMBED_API_BASE)",
      );
    }
  } else if (config.apiBase || config.apiKey) {
    throw new Error(`provider ${config.provider} does not take API credentials`);
  }
}
