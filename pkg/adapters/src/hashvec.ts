// Deterministic pseudo-random token vectors. Not semantically meaningful,
// but stable across platforms and runs, which is what the local providers
// promise: the test suite and offline pipelines never need a model download
// or network access.

export function tokenize(text: string): string[] {
  return text.toLowerCase().match(/[a-z0-9]+/g) ?? [];
}

function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const tokenCache = new Map<string, number[]>();

export function tokenVector(token: string, dim: number): number[] {
  const key = `${dim}:${token}`;
  const cached = tokenCache.get(key);
  if (cached) {
    return cached;
  }
  const rand = mulberry32(fnv1a(key));
  const vec = new Array<number>(dim);
  for (let i = 0; i < dim; i++) {
    vec[i] = rand() * 2 - 1;
  }
  tokenCache.set(key, vec);
  return vec;
}

export function l2Normalize(vec: number[]): number[] {
  let sq = 0;
  for (const v of vec) {
    sq += v * v;
  }
  if (sq === 0) {
    return vec;
  }
  const norm = Math.sqrt(sq);
  return vec.map((v) => v / norm);
}
