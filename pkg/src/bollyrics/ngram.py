"""Reverse-direction trigram model: training, probabilities, line sampling.

Lines are learned back-to-front so that generation can start from a rhyming
line ending and grow toward the line start; the start sentinel terminates
every reversed sequence and doubles as the stop symbol during sampling.
"""

from __future__ import annotations

import json
import math
import random
from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from . import counting
from .corpus import START_TOKEN, Corpus, Line, iter_reversed_windows
from .errors import ModelFormatError, UnseenContextError
from .rhyme import NormalizationTable, RhymePair


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling knobs: multinomial draw with optional temperature."""

    temperature: float = 1.0
    rng_seed: Optional[int] = None

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError("temperature must be > 0")

    def make_rng(self) -> random.Random:
        # None seeds from OS entropy
        return random.Random(self.rng_seed)


def reverse_decompose(line: Line) -> list[tuple[tuple[str, str], str]]:
    """List the ((w1, w2) -> target) triples of a line walked back-to-front.

    For [v1..vn] the triples run ([vn, vn-1] -> vn-2) ... ([v2, v1] -> start
    sentinel); lines below two tokens produce nothing.
    """
    return [
        ((ctx[0], ctx[1]), target)
        for ctx, target in iter_reversed_windows(line, 2)
    ]


class TrigramModel:
    """Unsmoothed maximum-likelihood trigram counts over reversed lines.

    Tokens are stored once in ``tokens`` (the start sentinel at id 0); counts
    live in a sorted counting.TrigramTable, which keeps continuations of each
    context contiguous and id-ordered.  The model is immutable after
    construction; generation never needs smoothing because every context
    reachable from an observed line ending was itself observed (each
    continuation either extends within its source line or was trained to
    emit the sentinel).
    """

    def __init__(self, tokens: list[str], table: counting.TrigramTable):
        if not tokens or tokens[0] != START_TOKEN:
            raise ModelFormatError(f"tokens[0] must be the start sentinel {START_TOKEN!r}")
        if len(set(tokens)) != len(tokens):
            raise ModelFormatError("duplicate token in vocabulary")
        if table.vocab_size != len(tokens):
            raise ModelFormatError("table vocab_size does not match the token list")
        self.tokens = list(tokens)
        self.ids = {w: i for i, w in enumerate(self.tokens)}
        self.table = table
        self._validate()

    def _validate(self) -> None:
        t, v = self.table, self.table.vocab_size
        if len(t.ctx_offsets) != len(t.ctx_keys) + 1 or len(t.w3) != len(t.counts):
            raise ModelFormatError("inconsistent table shape")
        if t.ctx_keys:
            if t.ctx_keys[0] < 0 or t.ctx_keys[-1] >= v * v:
                raise ModelFormatError("token id out of range")
            # keys are sorted and packed as w1*V + w2, so any w1 == 0 sorts first
            if t.ctx_keys[0] < v or any(k % v == 0 for k in t.ctx_keys):
                raise ModelFormatError("start sentinel cannot appear inside a context")
        if t.w3 and not (0 <= min(t.w3) and max(t.w3) < v):
            raise ModelFormatError("token id out of range")
        if t.counts and min(t.counts) < 1:
            raise ModelFormatError(f"invalid trigram count {min(t.counts)!r}")
        if len(t.w3) < len(t.ctx_keys):
            raise ModelFormatError("context with no continuations")

    @classmethod
    def from_counts(
        cls, tokens: list[str], counts: dict[tuple[int, int], dict[int, int]]
    ) -> "TrigramModel":
        """Build a model from a plain {(w1, w2): {w3: count}} mapping."""
        v = len(tokens)
        rows = sorted(
            (w1, w2, w3, count)
            for (w1, w2), inner in counts.items()
            for w3, count in inner.items()
        )
        table = counting.TrigramTable(
            v,
            *_arrays_from_rows(rows, v),
        )
        return cls(tokens, table)

    def counts_dict(self) -> dict[tuple[int, int], dict[int, int]]:
        """Counts as a plain nested dict (test/oracle convenience)."""
        out: dict[tuple[int, int], dict[int, int]] = {}
        t, v = self.table, self.table.vocab_size
        for i, key in enumerate(t.ctx_keys):
            lo, hi = t.ctx_offsets[i], t.ctx_offsets[i + 1]
            out[(key // v, key % v)] = dict(zip(t.w3[lo:hi], t.counts[lo:hi]))
        return out

    @property
    def vocab(self) -> frozenset[str]:
        return frozenset(self.tokens)

    def context_count(self) -> int:
        return self.table.n_contexts()

    def iter_contexts(self) -> Iterator[tuple[str, str]]:
        v = self.table.vocab_size
        for key in self.table.ctx_keys:
            yield self.tokens[key // v], self.tokens[key % v]

    def _context_slice(self, context: tuple[str, str]) -> tuple[int, int]:
        w1, w2 = context
        try:
            key = self.ids[w1] * self.table.vocab_size + self.ids[w2]
        except KeyError:
            raise UnseenContextError(f"context {context!r} not in vocabulary") from None
        keys = self.table.ctx_keys
        i = bisect_left(keys, key)
        if i == len(keys) or keys[i] != key:
            raise UnseenContextError(f"context {context!r} never observed in training")
        return self.table.ctx_offsets[i], self.table.ctx_offsets[i + 1]

    def next_distribution(self, context: tuple[str, str]) -> dict[str, float]:
        """Maximum-likelihood continuation probabilities for an observed context."""
        lo, hi = self._context_slice(context)
        t = self.table
        total = sum(t.counts[lo:hi])
        return {self.tokens[t.w3[j]]: t.counts[j] / total for j in range(lo, hi)}

    def sample_next(
        self,
        context: tuple[str, str],
        cfg: SamplerConfig = SamplerConfig(),
        rng: Optional[random.Random] = None,
    ) -> str:
        """Draw one continuation, with counts raised to 1/temperature.

        Candidates are walked in token-id order (how the table stores them),
        so draws are reproducible however the table was assembled.
        """
        rng = rng if rng is not None else cfg.make_rng()
        lo, hi = self._context_slice(context)
        t = self.table
        if cfg.temperature == 1.0:
            weights = [float(c) for c in t.counts[lo:hi]]
        else:
            # log-space keeps small temperatures from overflowing
            log_max = math.log(max(t.counts[lo:hi]))
            weights = [
                math.exp((math.log(c) - log_max) / cfg.temperature)
                for c in t.counts[lo:hi]
            ]
        cumulative = []
        acc = 0.0
        for w in weights:
            acc += w
            cumulative.append(acc)
        picked = bisect_right(cumulative, rng.random() * acc)
        picked = min(picked, len(cumulative) - 1)  # guard the u ~ 1.0 edge
        return self.tokens[t.w3[lo + picked]]

    def save(self, path: str | Path) -> None:
        """Write the model file: vocab plus (id1, id2, id3, count) rows.

        Rows come out sorted by id triple (the table's native order), so
        identical models serialize to identical bytes.
        """
        t, v = self.table, self.table.vocab_size
        trigrams = []
        for i, key in enumerate(t.ctx_keys):
            w1, w2 = key // v, key % v
            for j in range(t.ctx_offsets[i], t.ctx_offsets[i + 1]):
                trigrams.append([w1, w2, t.w3[j], t.counts[j]])
        doc = {
            "version": 1,
            "start_token": START_TOKEN,
            "vocab": self.tokens,
            "trigrams": trigrams,
        }
        Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TrigramModel":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ModelFormatError(f"cannot read model {path}: {exc}") from exc
        if doc.get("version") != 1:
            raise ModelFormatError(f"model {path}: unsupported version {doc.get('version')!r}")
        if doc.get("start_token") != START_TOKEN:
            raise ModelFormatError(f"model {path}: unexpected start token")
        tokens = doc.get("vocab")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ModelFormatError(f"model {path}: bad vocab")
        rows = []
        for entry in doc.get("trigrams", []):
            if not (
                isinstance(entry, list)
                and len(entry) == 4
                and all(isinstance(x, int) for x in entry)
            ):
                raise ModelFormatError(f"model {path}: bad trigram row {entry!r}")
            if entry[3] < 1:
                raise ModelFormatError(f"model {path}: invalid trigram count {entry[3]}")
            if not all(0 <= x < len(tokens) for x in entry[:3]):
                raise ModelFormatError(f"model {path}: token id out of range in {entry!r}")
            rows.append(tuple(entry))
        rows.sort()
        if len(set((r[0], r[1], r[2]) for r in rows)) != len(rows):
            raise ModelFormatError(f"model {path}: duplicate trigram rows")
        table = counting.TrigramTable(len(tokens), *_arrays_from_rows(rows, len(tokens)))
        return cls(tokens, table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TrigramModel)
            and self.tokens == other.tokens
            and self.table == other.table
        )


def _arrays_from_rows(rows, vocab_size: int):
    """Sorted (w1, w2, w3, count) rows -> the TrigramTable array quartet."""
    ctx_keys = array("q")
    ctx_offsets = array("q", [0])
    w3s = array("q")
    counts = array("q")
    prev_ctx = None
    for w1, w2, w3, count in rows:
        ctx = w1 * vocab_size + w2
        if ctx != prev_ctx:
            if prev_ctx is not None:
                ctx_offsets.append(len(w3s))
            ctx_keys.append(ctx)
            prev_ctx = ctx
        w3s.append(w3)
        counts.append(count)
    if prev_ctx is not None:
        ctx_offsets.append(len(w3s))
    return ctx_keys, ctx_offsets, w3s, counts


def train(corpus: Corpus, norm: Optional[NormalizationTable] = None) -> TrigramModel:
    """Fit trigram counts over every reversed line of the corpus.

    Tokens are normalized first; lines with fewer than two tokens are
    untrainable and skipped.  Raises when nothing is trainable.
    """
    norm = norm or NormalizationTable.empty()
    ids: dict[str, int] = {START_TOKEN: 0}
    id_lines: list[list[int]] = []
    for line in corpus.iter_lines():
        if len(line) < 2:
            continue
        encoded = []
        for token in line:
            token = norm.normalize(token)
            token_id = ids.get(token)
            if token_id is None:
                ids[token] = token_id = len(ids)
            encoded.append(token_id)
        id_lines.append(encoded)
    if not id_lines:
        raise ModelFormatError("corpus has no line with at least two tokens")
    table = counting.count_reversed_trigrams(id_lines, start_id=0, vocab_size=len(ids))
    return TrigramModel(sorted(ids, key=ids.get), table)


def trainable_line_count(corpus: Corpus) -> int:
    return sum(1 for line in corpus.iter_lines() if len(line) >= 2)


def generate_line(
    model: TrigramModel,
    seed: RhymePair | tuple[str, str],
    max_len: int = 10,
    cfg: SamplerConfig = SamplerConfig(),
    rng: Optional[random.Random] = None,
) -> Line:
    """Grow one line backward from a rhyme pair and return it in natural order.

    Sampling starts from the reversed context (final, penultimate) and stops
    when the start sentinel is drawn or the line reaches ``max_len`` tokens
    (seed words included); the emitted words are then reversed so the line
    ends with the seed pair.
    """
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    if isinstance(seed, RhymePair):
        penultimate, final = seed.penultimate, seed.final
    else:
        penultimate, final = seed
    rng = rng if rng is not None else cfg.make_rng()
    emitted = [final, penultimate]
    while len(emitted) < max_len:
        word = model.sample_next((emitted[-2], emitted[-1]), cfg, rng)
        if word == START_TOKEN:
            break
        emitted.append(word)
    return emitted[::-1]
