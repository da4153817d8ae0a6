# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled trigram-count kernel: pack windows into int64, sort, run-length
encode into parallel arrays.  Semantics match
bollyrics.counting.count_reversed_trigrams_pure."""

from cpython cimport array
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort

import array as _array

cdef array.array _TEMPLATE_Q = _array.array('q', [])


def count_reversed_trigrams(flat, offsets, long long start_id, long long vocab_size):
    """Count reversed trigram windows over flat token ids with line offsets.

    ``flat`` and ``offsets`` are int64 buffers; line i spans
    flat[offsets[i]:offsets[i+1]].  Returns (ctx_keys, ctx_offsets, w3,
    counts) arrays as consumed by counting.TrigramTable.  Requires
    vocab_size**3 < 2**63.
    """
    cdef long long[:] ids = flat
    cdef long long[:] offs = offsets
    cdef long long V = vocab_size
    if V < 1 or V > (<long long>1) << 21:
        raise ValueError("vocab_size out of range for packed keys")
    if start_id < 0 or start_id >= V:
        raise ValueError("start_id out of range")

    cdef vector[long long] packed
    cdef Py_ssize_t li, n_lines = offs.shape[0] - 1
    cdef long long o0, o1, L, j, w1, w2, w3

    for li in range(n_lines):
        o0 = offs[li]
        o1 = offs[li + 1]
        L = o1 - o0
        if L < 2:
            continue
        # reversed walk: window j pairs (v[L-j], v[L-j-1]) with the word
        # before them; the last window targets the start sentinel
        for j in range(L - 1):
            w1 = ids[o1 - 1 - j]
            w2 = ids[o1 - 2 - j]
            if j == L - 2:
                w3 = start_id
            else:
                w3 = ids[o1 - 3 - j]
            packed.push_back((w1 * V + w2) * V + w3)

    sort(packed.begin(), packed.end())

    # first pass: run-length encode unique triples
    cdef vector[long long] u_keys, u_counts
    cdef Py_ssize_t i = 0, run, m = packed.size()
    cdef long long key
    while i < m:
        key = packed[i]
        run = 1
        while i + run < m and packed[i + run] == key:
            run += 1
        u_keys.push_back(key)
        u_counts.push_back(run)
        i += run

    # second pass: split triple keys into per-context slices
    cdef Py_ssize_t n_unique = u_keys.size(), n_ctx = 0
    cdef long long prev_ctx = -1, ctx
    for i in range(n_unique):
        ctx = u_keys[i] // V
        if ctx != prev_ctx:
            n_ctx += 1
            prev_ctx = ctx

    cdef array.array ctx_keys = array.clone(_TEMPLATE_Q, n_ctx, zero=False)
    cdef array.array ctx_offsets = array.clone(_TEMPLATE_Q, n_ctx + 1, zero=False)
    cdef array.array w3s = array.clone(_TEMPLATE_Q, n_unique, zero=False)
    cdef array.array counts = array.clone(_TEMPLATE_Q, n_unique, zero=False)
    cdef long long[:] ctx_keys_v = ctx_keys
    cdef long long[:] ctx_offsets_v = ctx_offsets
    cdef long long[:] w3s_v = w3s
    cdef long long[:] counts_v = counts

    cdef Py_ssize_t c = 0
    prev_ctx = -1
    for i in range(n_unique):
        key = u_keys[i]
        ctx = key // V
        if ctx != prev_ctx:
            ctx_keys_v[c] = ctx
            ctx_offsets_v[c] = i
            prev_ctx = ctx
            c += 1
        w3s_v[i] = key % V
        counts_v[i] = u_counts[i]
    ctx_offsets_v[n_ctx] = n_unique

    return ctx_keys, ctx_offsets, w3s, counts
