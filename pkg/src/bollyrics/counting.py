"""Trigram-count accumulation over reversed, integer-encoded lines.

This is the training hot loop: one window per adjacent token triple of every
reversed line (start sentinel appended).  Counts live in a compact sorted
form, ``TrigramTable``: each (w1, w2) context is packed into one integer key
and the continuations for a context sit in a contiguous slice, already id-
sorted.  A compiled kernel (bollyrics._native) does the packing, sorting, and
run-length encoding in C++ when built; the pure-Python implementation below
is the reference and the fallback.  Set ``BOLLYRICS_PURE=1`` to force the
fallback.  Both backends produce identical tables.
"""

from __future__ import annotations

import os
from array import array
from typing import NamedTuple

try:
    from . import _native
except ImportError:
    _native = None

# triple keys are (w1*V + w2)*V + w3 in int64, so the packed fast path needs
# V below 2**21; the pure path switches to tuple keys above that
_PACKED_MAX_VOCAB = 1 << 21

FORCE_PURE = os.environ.get("BOLLYRICS_PURE", "") not in ("", "0")
BACKEND = "native" if (_native is not None and not FORCE_PURE) else "pure"


class TrigramTable(NamedTuple):
    """Sorted trigram counts in CSR-like parallel arrays.

    ``ctx_keys[i]`` is the packed context w1*vocab_size + w2; its
    continuations are ``w3[ctx_offsets[i]:ctx_offsets[i+1]]`` with parallel
    ``counts``, ascending in w3.
    """

    vocab_size: int
    ctx_keys: array
    ctx_offsets: array
    w3: array
    counts: array

    def n_contexts(self) -> int:
        return len(self.ctx_keys)

    def n_triples(self) -> int:
        return len(self.w3)


def table_from_sorted_triples(triples, vocab_size: int) -> TrigramTable:
    """Run-length encode (w1, w2, w3)-sorted triple keys into a table.

    ``triples`` yields either packed int keys or (w1, w2, w3) tuples, sorted.
    """
    ctx_keys = array("q")
    ctx_offsets = array("q", [0])
    w3s = array("q")
    counts = array("q")
    v = vocab_size
    prev_key = None
    prev_ctx = None
    for key in triples:
        if key == prev_key:
            counts[-1] += 1
            continue
        prev_key = key
        if isinstance(key, tuple):
            ctx, w3 = key[0] * v + key[1], key[2]
        else:
            ctx, w3 = key // v, key % v
        if ctx != prev_ctx:
            if prev_ctx is not None:
                ctx_offsets.append(len(w3s))
            ctx_keys.append(ctx)
            prev_ctx = ctx
        w3s.append(w3)
        counts.append(1)
    if prev_ctx is not None:
        ctx_offsets.append(len(w3s))
    return TrigramTable(vocab_size, ctx_keys, ctx_offsets, w3s, counts)


def count_reversed_trigrams_pure(
    id_lines: list[list[int]], start_id: int, vocab_size: int
) -> TrigramTable:
    packed = vocab_size < _PACKED_MAX_VOCAB
    v = vocab_size
    keys: list = []
    push = keys.append
    for line in id_lines:
        n = len(line)
        if n < 2:
            continue
        rev = line[::-1]
        rev.append(start_id)
        if packed:
            for j in range(n - 1):
                push((rev[j] * v + rev[j + 1]) * v + rev[j + 2])
        else:
            for j in range(n - 1):
                push((rev[j], rev[j + 1], rev[j + 2]))
    keys.sort()
    return table_from_sorted_triples(keys, vocab_size)


def count_reversed_trigrams_native(
    id_lines: list[list[int]], start_id: int, vocab_size: int
) -> TrigramTable:
    flat = array("q")
    offsets = array("q", [0])
    for line in id_lines:
        flat.extend(line)
        offsets.append(len(flat))
    parts = _native.count_reversed_trigrams(flat, offsets, start_id, vocab_size)
    return TrigramTable(vocab_size, *parts)


def count_reversed_trigrams(
    id_lines: list[list[int]], start_id: int, vocab_size: int
) -> TrigramTable:
    """Accumulate trigram counts with the selected backend."""
    if BACKEND == "native" and vocab_size < _PACKED_MAX_VOCAB:
        return count_reversed_trigrams_native(id_lines, start_id, vocab_size)
    return count_reversed_trigrams_pure(id_lines, start_id, vocab_size)
