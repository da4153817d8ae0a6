/** CLI: train an LSTM on exported sequences, or generate songs from one.
 *
 *   node dist/cli.js train --vocab export/vocab.json --sequences export/sequences.jsonl \
 *       --out-dir weights [--epochs 20] [--seq-len 25] [--units 128] [--lr 0.001]
 *   node dist/cli.js generate --model-dir weights --vocab export/vocab.json \
 *       --rhyme-index model.rhyme.json --scheme ABAB [--paragraphs 4] [--seed 7] \
 *       [--temperature 1.0 | --greedy] [--max-len 10] [--out song.json]
 */

import * as fs from "fs";
import * as path from "path";

import { loadRhymeIndex, loadVocab } from "./data.js";
import { emitSongs } from "./generate.js";
import { loadModel, saveModel } from "./io.js";
import { mulberry32 } from "./rng.js";
import { trainLstm } from "./train.js";
import { DEFAULT_SPEC } from "./types.js";

type Flags = Record<string, string | boolean>;

function parseFlags(argv: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument ${arg}`);
    }
    const key = arg.slice(2);
    if (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
      flags[key] = argv[++i];
    } else {
      flags[key] = true;
    }
  }
  return flags;
}

function requireFlag(flags: Flags, name: string): string {
  const value = flags[name];
  if (typeof value !== "string") {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

function numFlag(flags: Flags, name: string, fallback: number): number {
  const value = flags[name];
  if (value === undefined || value === true) {
    return fallback;
  }
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) {
    throw new Error(`flag --${name} expects a number, got ${value}`);
  }
  return parsed;
}

async function cmdTrain(flags: Flags): Promise<void> {
  const spec = {
    ...DEFAULT_SPEC,
    contextLength: numFlag(flags, "seq-len", DEFAULT_SPEC.contextLength),
    lstmUnits: numFlag(flags, "units", DEFAULT_SPEC.lstmUnits),
    embeddingDim: numFlag(flags, "embedding-dim", DEFAULT_SPEC.embeddingDim),
    denseUnits: numFlag(flags, "dense-units", DEFAULT_SPEC.denseUnits),
    learningRate: numFlag(flags, "lr", DEFAULT_SPEC.learningRate),
    momentum: numFlag(flags, "momentum", DEFAULT_SPEC.momentum),
    batchSize: numFlag(flags, "batch-size", DEFAULT_SPEC.batchSize),
  };
  const outDir = requireFlag(flags, "out-dir");
  const { model, report } = await trainLstm({
    vocabPath: requireFlag(flags, "vocab"),
    sequencesPath: requireFlag(flags, "sequences"),
    spec,
    epochs: numFlag(flags, "epochs", 20),
  });
  await saveModel(model, outDir, spec);
  const reportPath = path.join(outDir, "report.json");
  fs.writeFileSync(reportPath, JSON.stringify(report, null, 2) + "\n");
  console.log(JSON.stringify({ out_dir: outDir, ...report, losses: undefined }));
}

async function cmdGenerate(flags: Flags): Promise<void> {
  const modelDir = requireFlag(flags, "model-dir");
  const { model, spec } = await loadModel(modelDir);
  const vocab = loadVocab(requireFlag(flags, "vocab"));
  const index = loadRhymeIndex(requireFlag(flags, "rhyme-index"));
  const seed = numFlag(flags, "seed", Date.now() >>> 0);
  const song = emitSongs(model, vocab, spec.contextLength, index, requireFlag(flags, "scheme"), {
    paragraphs: numFlag(flags, "paragraphs", 4),
    temperature: numFlag(flags, "temperature", 1.0),
    greedy: flags["greedy"] === true,
    maxLen: numFlag(flags, "max-len", 10),
    rng: mulberry32(seed),
  });
  const text = JSON.stringify(song);
  const out = flags["out"];
  if (typeof out === "string") {
    fs.writeFileSync(out, text + "\n");
    console.log(out);
  } else {
    console.log(text);
  }
}

async function main(): Promise<number> {
  const [command, ...rest] = process.argv.slice(2);
  try {
    const flags = parseFlags(rest);
    if (command === "train") {
      await cmdTrain(flags);
    } else if (command === "generate") {
      await cmdGenerate(flags);
    } else {
      console.error("usage: cli.js <train|generate> [--flags]");
      return 2;
    }
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

main().then((code) => {
  process.exitCode = code;
});
