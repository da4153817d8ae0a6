/** Writers for interchange-format fixtures, mirroring what the core CLI's
 * `export` subcommand produces. */

import * as fs from "fs";
import * as path from "path";

export const START = "<start>";

export function writeInterchange(
  dir: string,
  lines: string[][],
  contextLen = 2,
): { vocabPath: string; sequencesPath: string } {
  fs.mkdirSync(dir, { recursive: true });
  const tokens: string[] = [START];
  const ids = new Map<string, number>([[START, 0]]);
  for (const line of lines) {
    for (const token of line) {
      if (!ids.has(token)) {
        ids.set(token, tokens.length);
        tokens.push(token);
      }
    }
  }
  const records: string[] = [];
  for (const line of lines) {
    if (line.length < contextLen) continue;
    const rev = [...line].reverse().concat([START]);
    for (let j = 0; j + contextLen < rev.length; j++) {
      const context = rev.slice(j, j + contextLen).map((t) => ids.get(t)!);
      const target = ids.get(rev[j + contextLen])!;
      records.push(JSON.stringify({ context, target }));
    }
  }
  const vocabPath = path.join(dir, "vocab.json");
  const sequencesPath = path.join(dir, "sequences.jsonl");
  fs.writeFileSync(
    vocabPath,
    JSON.stringify({ version: 1, start_token: START, tokens }) + "\n",
  );
  fs.writeFileSync(sequencesPath, records.join("\n") + "\n");
  return { vocabPath, sequencesPath };
}

export function writeRhymeIndex(
  dir: string,
  groups: Record<string, Array<[string, string]>>,
): string {
  fs.mkdirSync(dir, { recursive: true });
  const p = path.join(dir, "model.rhyme.json");
  fs.writeFileSync(p, JSON.stringify({ version: 1, groups }) + "\n");
  return p;
}
