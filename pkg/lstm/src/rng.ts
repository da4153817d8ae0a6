/** Small seedable PRNG (mulberry32) so generation runs are reproducible. */

export type Rng = () => number;

export function mulberry32(seed: number): Rng {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Draw an index from unnormalized nonnegative weights. */
export function weightedIndex(
  weights: Float32Array | Float64Array | number[],
  rng: Rng,
): number {
  let total = 0;
  for (const w of weights) total += w;
  let u = rng() * total;
  for (let i = 0; i < weights.length; i++) {
    u -= weights[i];
    if (u <= 0) return i;
  }
  return weights.length - 1;
}

/** Sample without replacement: k distinct items from the pool. */
export function sampleDistinct<T>(pool: T[], k: number, rng: Rng): T[] {
  const copy = [...pool];
  const out: T[] = [];
  for (let i = 0; i < k; i++) {
    const j = Math.floor(rng() * copy.length);
    out.push(copy.splice(j, 1)[0]);
  }
  return out;
}
