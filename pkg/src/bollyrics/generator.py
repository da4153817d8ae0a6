"""Song assembly: rhyme-scheme parsing, group allocation, rendering.

A scheme like ABAB fixes the lines per paragraph; each distinct letter is
bound to one sound group for the whole song, every line is seeded by a pair
drawn from its letter's group, and the trigram model fills the line backward
from that ending.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .corpus import Line
from .errors import AllocationError, CorpusFormatError, SchemeError
from .ngram import SamplerConfig, TrigramModel, generate_line
from .rhyme import RhymeIndex, SoundGroup

MAX_DISTINCT_LETTERS = len(SoundGroup)


@dataclass(frozen=True)
class RhymeScheme:
    letters: tuple[str, ...]

    def __str__(self) -> str:
        return "".join(self.letters)

    def distinct_letters(self) -> list[str]:
        """Distinct letters in order of first appearance."""
        seen: list[str] = []
        for letter in self.letters:
            if letter not in seen:
                seen.append(letter)
        return seen

    def __len__(self) -> int:
        return len(self.letters)


def parse_scheme(text: str) -> RhymeScheme:
    """Parse a scheme string such as AABB, ABAB, AAA, or ABCD.

    ASCII letters only, case-insensitive; at most 13 distinct letters since
    each needs its own sound group.
    """
    if not text:
        raise SchemeError("rhyme scheme must be non-empty")
    letters = []
    for ch in text:
        if not ("a" <= ch <= "z" or "A" <= ch <= "Z"):
            raise SchemeError(f"invalid scheme character {ch!r} (letters only)")
        letters.append(ch.upper())
    distinct = len(set(letters))
    if distinct > MAX_DISTINCT_LETTERS:
        raise SchemeError(
            f"{distinct} distinct letters exceed the {MAX_DISTINCT_LETTERS} sound groups"
        )
    return RhymeScheme(tuple(letters))


GroupAllocation = dict[str, SoundGroup]


def allocate_groups(
    scheme: RhymeScheme,
    index: RhymeIndex,
    rng: Optional[random.Random] = None,
) -> GroupAllocation:
    """Randomly bind each distinct scheme letter to its own non-empty group.

    Sampling is without replacement, so distinct letters never share a
    group; insufficient non-empty groups is an error.
    """
    rng = rng if rng is not None else random.Random()
    letters = scheme.distinct_letters()
    pool = index.nonempty_groups()
    if len(letters) > len(pool):
        raise AllocationError(
            f"scheme needs {len(letters)} group(s) but the index has only "
            f"{len(pool)} non-empty group(s)"
        )
    chosen = rng.sample(pool, len(letters))
    return dict(zip(letters, chosen))


@dataclass
class GeneratedSong:
    scheme: RhymeScheme
    allocation: GroupAllocation
    paragraphs: list[list[Line]]

    def __post_init__(self):
        for paragraph in self.paragraphs:
            if len(paragraph) != len(self.scheme):
                raise ValueError("every paragraph must have one line per scheme letter")

    def to_json(self) -> dict:
        return {
            "scheme": str(self.scheme),
            "allocation": {letter: group.value for letter, group in self.allocation.items()},
            "paragraphs": self.paragraphs,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GeneratedSong":
        try:
            scheme = parse_scheme(doc["scheme"])
            allocation = {
                letter.upper(): SoundGroup(group) for letter, group in doc["allocation"].items()
            }
            paragraphs = doc["paragraphs"]
        except (KeyError, TypeError, ValueError, SchemeError) as exc:
            raise CorpusFormatError(f"song document: {exc}") from exc
        if set(allocation) != set(scheme.distinct_letters()):
            raise CorpusFormatError("song document: allocation letters do not match scheme")
        if len(set(allocation.values())) != len(allocation):
            raise CorpusFormatError("song document: allocation is not injective")
        if not isinstance(paragraphs, list) or not paragraphs:
            raise CorpusFormatError("song document: paragraphs must be a non-empty list")
        for paragraph in paragraphs:
            if not isinstance(paragraph, list) or len(paragraph) != len(scheme):
                raise CorpusFormatError(
                    "song document: every paragraph needs one line per scheme letter"
                )
            for line in paragraph:
                if (
                    not isinstance(line, list)
                    or not line
                    or not all(isinstance(t, str) and t for t in line)
                ):
                    raise CorpusFormatError("song document: lines must be non-empty token lists")
        return cls(scheme=scheme, allocation=allocation, paragraphs=paragraphs)

    @classmethod
    def load(cls, path: str | Path) -> "GeneratedSong":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorpusFormatError(f"cannot read song file {path}: {exc}") from exc
        return cls.from_json(doc)


def generate_song(
    model: TrigramModel,
    index: RhymeIndex,
    scheme: RhymeScheme,
    paragraphs: int = 4,
    cfg: SamplerConfig = SamplerConfig(),
    rng: Optional[random.Random] = None,
    max_len: int = 10,
) -> GeneratedSong:
    """Generate a whole song for a rhyme scheme.

    Groups are allocated once per song and reused by every paragraph; seed
    pairs are drawn uniformly (with replacement across lines) from the
    letter's pool, which keeps corpus frequency weighting because duplicate
    pairs are retained.
    """
    if paragraphs < 1:
        raise ValueError("paragraphs must be >= 1")
    rng = rng if rng is not None else cfg.make_rng()
    allocation = allocate_groups(scheme, index, rng)
    body: list[list[Line]] = []
    for _ in range(paragraphs):
        lines = []
        for letter in scheme.letters:
            pool = index.groups[allocation[letter]]
            if not pool:
                raise AllocationError(f"group {allocation[letter]} has no rhyme pairs")
            pair = pool[rng.randrange(len(pool))]
            lines.append(generate_line(model, pair, max_len=max_len, cfg=cfg, rng=rng))
        body.append(lines)
    return GeneratedSong(scheme=scheme, allocation=allocation, paragraphs=body)


def render(song: GeneratedSong, show_start_token: bool = False) -> str:
    """Lay the song out as plain text: one blank line between paragraphs.

    With ``show_start_token`` every line is prefixed by the start sentinel,
    mirroring how sampled lines look before the sentinel is stripped.
    """
    assert song.paragraphs and all(song.paragraphs), "song must have non-empty paragraphs"
    prefix = "<start> " if show_start_token else ""
    blocks = [
        "\n".join(prefix + " ".join(line) for line in paragraph)
        for paragraph in song.paragraphs
    ]
    return "\n\n".join(blocks)
