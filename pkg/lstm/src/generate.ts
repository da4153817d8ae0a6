import * as tf from "@tensorflow/tfjs";

import { validateSong } from "./data.js";
import { fitContext } from "./train.js";
import { mulberry32, Rng, sampleDistinct, weightedIndex } from "./rng.js";
import { RhymeIndex, SongDoc, Vocab } from "./types.js";

export interface GenerateOptions {
  maxLen?: number;
  temperature?: number;
  greedy?: boolean;
  rng?: Rng;
}

function pickNext(probs: Float32Array, temperature: number, greedy: boolean, rng: Rng): number {
  if (greedy) {
    let best = 0;
    for (let i = 1; i < probs.length; i++) {
      if (probs[i] > probs[best]) best = i;
    }
    return best;
  }
  if (temperature === 1.0) {
    return weightedIndex(probs, rng);
  }
  // temper in log space; exact probabilities are not needed, only weights
  let maxLog = -Infinity;
  for (const p of probs) {
    if (p > 0) maxLog = Math.max(maxLog, Math.log(p));
  }
  const weights = new Float64Array(probs.length);
  for (let i = 0; i < probs.length; i++) {
    weights[i] = probs[i] > 0 ? Math.exp((Math.log(probs[i]) - maxLog) / temperature) : 0;
  }
  return weightedIndex(weights, rng);
}

/** Grow one line backward from a rhyme pair, mirroring the core generator:
 * start from the reversed (final, penultimate) context, sample until the
 * start sentinel or the token cap, then un-reverse. */
export function generateLine(
  model: tf.LayersModel,
  vocab: Vocab,
  contextLength: number,
  seedPair: [string, string],
  opts: GenerateOptions = {},
): string[] {
  const maxLen = opts.maxLen ?? 10;
  const temperature = opts.temperature ?? 1.0;
  const rng = opts.rng ?? mulberry32(Date.now() >>> 0);
  if (maxLen < 2) {
    throw new Error("maxLen must be >= 2");
  }
  const [penultimate, final] = seedPair;
  const startId = vocab.ids.get(vocab.startToken)!;
  const finalId = vocab.ids.get(final);
  const penultimateId = vocab.ids.get(penultimate);
  if (finalId === undefined || penultimateId === undefined) {
    throw new Error(`seed pair (${penultimate}, ${final}) not in vocabulary`);
  }
  const emitted = [finalId, penultimateId];
  while (emitted.length < maxLen) {
    const window = fitContext(emitted, contextLength, startId);
    const nextId = tf.tidy(() => {
      const input = tf.tensor2d([window], [1, contextLength], "int32");
      const probs = (model.predict(input) as tf.Tensor).dataSync() as Float32Array;
      return pickNext(probs, temperature, opts.greedy ?? false, rng);
    });
    if (nextId === startId) {
      break;
    }
    emitted.push(nextId);
  }
  return emitted.reverse().map((id) => vocab.tokens[id]);
}

export interface SongOptions extends GenerateOptions {
  paragraphs?: number;
}

/** Assemble a whole song in the core package's song JSON schema. */
export function emitSongs(
  model: tf.LayersModel,
  vocab: Vocab,
  contextLength: number,
  index: RhymeIndex,
  schemeText: string,
  opts: SongOptions = {},
): SongDoc {
  const paragraphs = opts.paragraphs ?? 4;
  const rng = opts.rng ?? mulberry32(Date.now() >>> 0);
  if (paragraphs < 1) {
    throw new Error("paragraphs must be >= 1");
  }
  if (!/^[A-Za-z]+$/.test(schemeText)) {
    throw new Error(`invalid rhyme scheme ${JSON.stringify(schemeText)}`);
  }
  const scheme = schemeText.toUpperCase();
  const letters = [...new Set(scheme)];
  const nonEmpty = [...index.entries()].filter(([, pairs]) => pairs.length > 0);
  if (letters.length > nonEmpty.length) {
    throw new Error(
      `scheme needs ${letters.length} group(s) but the index has only ${nonEmpty.length} non-empty`,
    );
  }
  const chosen = sampleDistinct(nonEmpty, letters.length, rng);
  const allocation: Record<string, string> = {};
  letters.forEach((letter, i) => {
    allocation[letter] = chosen[i][0];
  });
  const body: string[][][] = [];
  for (let p = 0; p < paragraphs; p++) {
    const lines: string[][] = [];
    for (const letter of scheme) {
      const pairs = index.get(allocation[letter])!;
      const pair = pairs[Math.floor(rng() * pairs.length)];
      lines.push(generateLine(model, vocab, contextLength, pair, { ...opts, rng }));
    }
    body.push(lines);
  }
  return validateSong({ scheme, allocation, paragraphs: body });
}
