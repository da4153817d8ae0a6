/** Readers for the interchange files the core package exports:
 * vocab.json, sequences.jsonl, and the model.rhyme.json pair index. */

import * as fs from "fs";
import { z } from "zod";

import { RhymeIndex, SequenceData, SongDoc, Vocab } from "./types.js";

const vocabSchema = z.object({
  version: z.literal(1),
  start_token: z.string().min(1),
  tokens: z.array(z.string().min(1)).min(1),
});

const sequenceRecordSchema = z.object({
  context: z.array(z.number().int().nonnegative()).min(1),
  target: z.number().int().nonnegative(),
});

const rhymeIndexSchema = z.object({
  version: z.literal(1),
  groups: z.record(z.string(), z.array(z.tuple([z.string().min(1), z.string().min(1)]))),
});

export const songSchema = z
  .object({
    scheme: z.string().regex(/^[A-Za-z]+$/),
    allocation: z.record(z.string(), z.string()),
    paragraphs: z.array(z.array(z.array(z.string().min(1)).min(1))).min(1),
  })
  .refine(
    (doc) => doc.paragraphs.every((p) => p.length === doc.scheme.length),
    { message: "every paragraph needs one line per scheme letter" },
  )
  .refine(
    (doc) =>
      new Set(doc.scheme.toUpperCase()).size === Object.keys(doc.allocation).length &&
      new Set(Object.values(doc.allocation)).size === Object.keys(doc.allocation).length,
    { message: "allocation must injectively cover the scheme letters" },
  );

export function loadVocab(path: string): Vocab {
  const doc = vocabSchema.parse(JSON.parse(fs.readFileSync(path, "utf-8")));
  if (!doc.tokens.includes(doc.start_token)) {
    throw new Error(`vocab ${path}: start token missing from token list`);
  }
  const ids = new Map(doc.tokens.map((t, i) => [t, i] as const));
  if (ids.size !== doc.tokens.length) {
    throw new Error(`vocab ${path}: duplicate tokens`);
  }
  return { startToken: doc.start_token, tokens: doc.tokens, ids };
}

export function loadSequences(path: string, vocabSize: number): SequenceData {
  const lines = fs
    .readFileSync(path, "utf-8")
    .split("\n")
    .filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`sequence file ${path} is empty`);
  }
  const contexts: number[][] = [];
  const targets: number[] = [];
  let windowLength = -1;
  lines.forEach((line, i) => {
    const record = sequenceRecordSchema.parse(JSON.parse(line));
    if (windowLength === -1) {
      windowLength = record.context.length;
    } else if (record.context.length !== windowLength) {
      throw new Error(`sequence file ${path}: ragged context at record ${i + 1}`);
    }
    for (const id of [...record.context, record.target]) {
      if (id >= vocabSize) {
        throw new Error(
          `sequence file ${path}: id ${id} out of range for vocab of ${vocabSize} (record ${i + 1})`,
        );
      }
    }
    contexts.push(record.context);
    targets.push(record.target);
  });
  return { contexts, targets, windowLength };
}

export function loadRhymeIndex(path: string): RhymeIndex {
  const doc = rhymeIndexSchema.parse(JSON.parse(fs.readFileSync(path, "utf-8")));
  const index: RhymeIndex = new Map();
  for (const [group, pairs] of Object.entries(doc.groups)) {
    index.set(group, pairs.map(([penultimate, final]) => [penultimate, final]));
  }
  return index;
}

export function validateSong(doc: unknown): SongDoc {
  return songSchema.parse(doc);
}
