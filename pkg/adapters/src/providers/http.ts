import type { AdapterConfig, EmbedProvider } from "../types.js";

const RETRYABLE_STATUS = new Set([429, 500, 502, 503, 504]);
const DEFAULT_PATH = "/embeddings";
const DEFAULT_MAX_ATTEMPTS = 5;
const DEFAULT_RETRY_BASE_MS = 500;
const MAX_BACKOFF_MS = 8000;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/**
 * POST {model, texts} to the configured endpoint and return the server's
 * {vectors} array, retrying 429s and 5xx responses with exponential backoff.
 */
export async function requestVectors(
  config: AdapterConfig,
  texts: string[],
): Promise<number[][]> {
  const base = (config.apiBase ?? "").replace(/\/$/, "");
  const path = config.apiPath ?? DEFAULT_PATH;
  const maxAttempts = config.maxAttempts ?? DEFAULT_MAX_ATTEMPTS;
  const retryBaseMs = config.retryBaseMs ?? DEFAULT_RETRY_BASE_MS;
  const headers: Record<string, string> = { "Content-Type": "application/json" };
  if (config.apiKey) {
    headers.Authorization = `Bearer ${config.apiKey}`;
  }
  const body = JSON.stringify({ model: config.modelName, texts });

  let lastError: Error | null = null;
  for (let attempt = 1; attempt <= maxAttempts; attempt++) {
    const response = await fetch(`${base}${path}`, { method: "POST", headers, body });
    if (response.ok) {
      const payload = (await response.json()) as { vectors?: number[][] };
      const vectors = payload.vectors;
      if (!Array.isArray(vectors) || vectors.length !== texts.length) {
        throw new Error(
          `embedding API returned ${vectors?.length ?? 0} vectors for ${texts.length} texts`,
        );
      }
      return vectors;
    }

    const detail = await response.text();
    lastError = new Error(
      `embedding request failed (${response.status}): ${detail.slice(0, 200)}`,
    );
    if (!RETRYABLE_STATUS.has(response.status) || attempt === maxAttempts) {
      throw lastError;
    }
    await sleep(Math.min(retryBaseMs * 2 ** (attempt - 1), MAX_BACKOFF_MS));
  }
  throw lastError ?? new Error("embedding request failed");
}

/**
 * Generic hosted-embedding client. The endpoint path and bearer token are
 * configurable so any "POST texts, receive vectors" API works.
 */
export function httpProvider(config: AdapterConfig, dim: number): EmbedProvider {
  return {
    name: "http-embedding-api",
    dim,
    async embedBatch(texts: string[]): Promise<number[][]> {
      const vectors = await requestVectors(config, texts);
      for (const vec of vectors) {
        if (!Array.isArray(vec) || vec.length !== dim) {
          throw new Error(
            `embedding API returned a vector of length ${vec?.length}, expected ${dim}`,
          );
        }
      }
      return vectors;
    },
  };
}

/**
 * Learn the API's native vector length by embedding one probe text.
 */
export async function probeHttpDim(config: AdapterConfig): Promise<number> {
  const vectors = await requestVectors(config, ["dimension probe"]);
  const vec = vectors[0];
  if (!Array.isArray(vec) || vec.length === 0) {
    throw new Error("dimension probe returned no vector");
  }
  return vec.length;
}
