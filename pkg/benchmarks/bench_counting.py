#!/usr/bin/env python3
"""Benchmark the trigram counting kernels: compiled extension vs pure Python.

Generates a synthetic corpus of integer-encoded lines with a roughly Zipfian
token distribution (what lyrics corpora look like after tokenization), counts
reversed trigram windows with both backends, checks they agree, and reports
timings.

Usage: python benchmarks/bench_counting.py [--lines 300000] [--vocab 50000]
"""

import argparse
import random
import time

from bollyrics import counting


def synth_id_lines(rng, n_lines, vocab_size, max_line_len=9):
    # approximate Zipf by squaring a uniform draw toward low ids
    lines = []
    for _ in range(n_lines):
        length = rng.randint(2, max_line_len)
        lines.append(
            [1 + int((rng.random() ** 2) * (vocab_size - 1)) for _ in range(length)]
        )
    return lines


def time_fn(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lines", type=int, default=300_000)
    parser.add_argument("--vocab", type=int, default=50_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(0)
    id_lines = synth_id_lines(rng, args.lines, args.vocab)
    tokens = sum(len(l) for l in id_lines)
    print(f"corpus: {args.lines} lines, {tokens} tokens, vocab {args.vocab}")

    t_pure, pure = time_fn(
        lambda: counting.count_reversed_trigrams_pure(
            [l[:] for l in id_lines], 0, args.vocab + 1
        ),
        args.repeats,
    )
    print(f"pure python : {t_pure * 1000:8.1f} ms")

    if counting._native is None:
        print("compiled    : extension not built (pip install -e . rebuilds it)")
        return

    t_native, native = time_fn(
        lambda: counting.count_reversed_trigrams_native(id_lines, 0, args.vocab + 1),
        args.repeats,
    )
    print(f"compiled    : {t_native * 1000:8.1f} ms")
    print(f"speedup     : {t_pure / t_native:8.2f}x")

    assert pure == native, "backends disagree"
    print(f"contexts    : {native.n_contexts()} (backends agree)")


if __name__ == "__main__":
    main()
