import type { EmbedProvider } from "../types.js";
import { l2Normalize, tokenVector, tokenize } from "../hashvec.js";

export const WORD_AVERAGING_DIM = 512;
export const SENTENCE_ENCODER_DIM = 768;

function averageVectors(vectors: number[][], dim: number): number[] {
  const out = new Array<number>(dim).fill(0);
  if (vectors.length === 0) {
    return out;
  }
  for (const vec of vectors) {
    for (let i = 0; i < dim; i++) {
      out[i] += vec[i]!;
    }
  }
  for (let i = 0; i < dim; i++) {
    out[i] /= vectors.length;
  }
  return out;
}

/**
 * Word2Vec-style bag of words: average the per-token vectors and normalize.
 * Word order does not matter.
 */
export function wordAveragingProvider(modelName: string): EmbedProvider {
  const namespace = `wordavg:${modelName}`;
  return {
    name: "local-word-averaging",
    dim: WORD_AVERAGING_DIM,
    async embedBatch(texts: string[]): Promise<number[][]> {
      return texts.map((text) => {
        const tokens = tokenize(text);
        const vectors = tokens.map((t) =>
          tokenVector(`${namespace}:${t}`, WORD_AVERAGING_DIM),
        );
        return l2Normalize(averageVectors(vectors, WORD_AVERAGING_DIM));
      });
    },
  };
}

/**
 * Sentence-level encoder stand-in: mixes unigram and bigram vectors so that
 * word order changes the embedding, unlike plain word averaging.
 */
export function sentenceEncoderProvider(modelName: string): EmbedProvider {
  const namespace = `sentenc:${modelName}`;
  return {
    name: "local-sentence-encoder",
    dim: SENTENCE_ENCODER_DIM,
    async embedBatch(texts: string[]): Promise<number[][]> {
      return texts.map((text) => {
        const tokens = tokenize(text);
        const parts: number[][] = tokens.map((t) =>
          tokenVector(`${namespace}:1:${t}`, SENTENCE_ENCODER_DIM),
        );
        for (let i = 0; i + 1 < tokens.length; i++) {
          parts.push(
            tokenVector(`${namespace}:2:${tokens[i]} ${tokens[i + 1]}`, SENTENCE_ENCODER_DIM),
          );
        }
        return l2Normalize(averageVectors(parts, SENTENCE_ENCODER_DIM));
      });
    },
  };
}
