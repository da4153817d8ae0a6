"""Corpus loading, tokenization, statistics, and training-sequence export.

The corpus file format is JSONL: one song per line, UTF-8, with fields
``title`` (string), ``year`` (integer or null), and ``lyrics`` (list of raw
lyric-line strings).
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from .errors import CorpusFormatError

logger = logging.getLogger(__name__)

START_TOKEN = "<start>"

#: A tokenized lyric line is just an ordered list of lowercase words.
Line = list[str]

_EDGE_PUNCT = re.compile(r"^\W+|\W+$")


def tokenize_line(raw: str) -> Line:
    """Split a raw lyric line into lowercase tokens.

    Whitespace-separated chunks are lowercased and stripped of leading and
    trailing punctuation; word-internal apostrophes and hyphens survive.
    Chunks that are all punctuation disappear, so the result may be empty.
    """
    tokens = []
    for chunk in raw.lower().split():
        word = _EDGE_PUNCT.sub("", chunk)
        if word:
            tokens.append(word)
    return tokens


@dataclass(frozen=True)
class Song:
    title: str
    year: Optional[int]
    lines: list[Line]

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("song title must be non-empty")
        if not self.lines:
            raise ValueError(f"song {self.title!r} has no usable lines")


@dataclass
class Corpus:
    songs: list[Song] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.songs)

    def iter_lines(self) -> Iterator[Line]:
        for song in self.songs:
            yield from song.lines


@dataclass(frozen=True)
class CorpusStats:
    song_count: int
    line_count: int
    avg_lines_per_song: float
    token_count: int
    unique_token_count: int
    year_min: Optional[int]
    year_max: Optional[int]
    per_year_histogram: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "song_count": self.song_count,
            "line_count": self.line_count,
            "avg_lines_per_song": self.avg_lines_per_song,
            "token_count": self.token_count,
            "unique_token_count": self.unique_token_count,
            "year_min": self.year_min,
            "year_max": self.year_max,
            "per_year_histogram": {str(y): c for y, c in sorted(self.per_year_histogram.items())},
        }


def _normalized_title(title: str) -> str:
    return " ".join(title.lower().split())


def _parse_record(record: dict, ordinal: int) -> Song:
    if not isinstance(record, dict):
        raise CorpusFormatError(f"record {ordinal}: not a JSON object")
    title = record.get("title")
    if not isinstance(title, str) or not title.strip():
        raise CorpusFormatError(f"record {ordinal}: missing or empty 'title'")
    year = record.get("year")
    if year is not None and not isinstance(year, int):
        raise CorpusFormatError(f"record {ordinal}: 'year' must be an integer or null")
    lyrics = record.get("lyrics")
    if not isinstance(lyrics, list) or not lyrics:
        raise CorpusFormatError(f"record {ordinal}: missing or empty 'lyrics'")
    lines = []
    for raw in lyrics:
        if not isinstance(raw, str):
            raise CorpusFormatError(f"record {ordinal}: 'lyrics' entries must be strings")
        tokens = tokenize_line(raw)
        if tokens:
            lines.append(tokens)
    if not lines:
        raise CorpusFormatError(f"record {ordinal}: no line survives tokenization")
    return Song(title=title.strip(), year=year, lines=lines)


def load_corpus(path: str | Path, strict: bool = False) -> Corpus:
    """Load, tokenize, and title-deduplicate a JSONL corpus file.

    Malformed records are skipped with a logged warning carrying the record
    ordinal; with ``strict=True`` the first bad record aborts the load.
    Duplicate titles (case- and whitespace-insensitive) keep the first
    occurrence.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read corpus file {path}: {exc}") from exc

    songs: list[Song] = []
    seen_titles: set[str] = set()
    skipped = 0
    for ordinal, raw_line in enumerate(text.splitlines(), start=1):
        if not raw_line.strip():
            continue
        try:
            try:
                record = json.loads(raw_line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"record {ordinal}: invalid JSON ({exc})") from exc
            song = _parse_record(record, ordinal)
        except CorpusFormatError as exc:
            if strict:
                raise
            skipped += 1
            logger.warning("skipping %s", exc)
            continue
        key = _normalized_title(song.title)
        if key in seen_titles:
            continue
        seen_titles.add(key)
        songs.append(song)
    if skipped:
        logger.warning("skipped %d malformed record(s) in %s", skipped, path)
    return Corpus(songs=songs)


def compute_stats(corpus: Corpus) -> CorpusStats:
    """Count songs, lines, and tokens; histogram release years where present."""
    if not corpus.songs:
        raise CorpusFormatError("cannot compute statistics of an empty corpus")
    line_count = 0
    token_count = 0
    vocab: set[str] = set()
    histogram: dict[int, int] = {}
    for song in corpus.songs:
        line_count += len(song.lines)
        for line in song.lines:
            token_count += len(line)
            vocab.update(line)
        if song.year is not None:
            histogram[song.year] = histogram.get(song.year, 0) + 1
    years = sorted(histogram)
    return CorpusStats(
        song_count=len(corpus.songs),
        line_count=line_count,
        avg_lines_per_song=line_count / len(corpus.songs),
        token_count=token_count,
        unique_token_count=len(vocab),
        year_min=years[0] if years else None,
        year_max=years[-1] if years else None,
        per_year_histogram=histogram,
    )


def iter_reversed_windows(tokens: Line, context_len: int) -> Iterator[tuple[list[str], str]]:
    """Yield (context, target) windows over a line walked back-to-front.

    The reversed sequence is the line back-to-front followed by the start
    sentinel; each window pairs ``context_len`` consecutive words with the
    word after them, so the final window always targets the sentinel.  Lines
    shorter than ``context_len`` yield nothing.
    """
    if context_len < 1:
        raise ValueError("context_len must be >= 1")
    if len(tokens) < context_len:
        return
    rev = list(reversed(tokens))
    rev.append(START_TOKEN)
    for j in range(len(rev) - context_len):
        yield rev[j : j + context_len], rev[j + context_len]


def export_sequences(
    corpus: Corpus,
    vocab_out: str | Path,
    seq_out: str | Path,
    context_len: int = 2,
) -> int:
    """Write the vocabulary and (context ids -> target id) window files.

    Returns the number of windows written.  The vocabulary file is JSON with
    the start sentinel at id 0; the sequence file is JSONL with one
    ``{"context": [...], "target": id}`` record per window.
    """
    if not corpus.songs:
        raise CorpusFormatError("cannot export an empty corpus")
    if context_len < 1:
        raise ValueError("context_len must be >= 1")

    ids: dict[str, int] = {START_TOKEN: 0}
    for line in corpus.iter_lines():
        for token in line:
            if token not in ids:
                ids[token] = len(ids)

    vocab_path, seq_path = Path(vocab_out), Path(seq_out)
    windows = 0
    try:
        with seq_path.open("w", encoding="utf-8") as fh:
            for line in corpus.iter_lines():
                for context, target in iter_reversed_windows(line, context_len):
                    record = {"context": [ids[w] for w in context], "target": ids[target]}
                    fh.write(json.dumps(record) + "\n")
                    windows += 1
        vocab_doc = {
            "version": 1,
            "start_token": START_TOKEN,
            "tokens": sorted(ids, key=ids.get),
        }
        vocab_path.write_text(json.dumps(vocab_doc) + "\n", encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot write export files: {exc}") from exc
    return windows
