"""Sound-group classification of romanized-Hindi word endings.

Words are grouped into 13 Devanagri sound classes by the ending of their
romanized spelling.  Four vowel groups carry multi-character suffix rules
(with exception words); the nine consonant groups match the bare final
letter.  Classification drives the rhyme-pair index used to seed generation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional

from .corpus import Corpus, Line
from .errors import CorpusFormatError


class SoundGroup(Enum):
    """The 13 Devanagri sound classes used as rhyme equivalence classes."""

    E = "E"  # ए
    A = "A"  # अ/आ
    U = "U"  # उ/ऊ
    I = "I"  # इ/ई
    D = "D"  # द
    K = "K"  # क
    H = "H"  # ह
    R = "R"  # र
    M = "M"  # म
    T = "T"  # त
    L = "L"  # ल
    B = "B"  # ब
    P = "P"  # प

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RhymeRule:
    kind: str  # "suffix" | "whole_word"
    pattern: str
    group: SoundGroup
    exceptions: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.kind not in ("suffix", "whole_word"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if not self.pattern:
            raise ValueError("rule pattern must be non-empty")
        if self.exceptions and self.kind != "suffix":
            raise ValueError("exceptions apply only to suffix rules")


class RuleTable:
    """Ordered ending rules with whole-word > longest-suffix precedence."""

    def __init__(self, rules: list[RhymeRule]):
        self.rules = list(rules)
        self._whole_words = {r.pattern: r.group for r in self.rules if r.kind == "whole_word"}
        # longest patterns first; stable sort keeps table order among ties
        self._suffixes = sorted(
            (r for r in self.rules if r.kind == "suffix"),
            key=lambda r: -len(r.pattern),
        )
        self._cache: dict[str, Optional[SoundGroup]] = {}

    def classify(self, word: str) -> Optional[SoundGroup]:
        """Return the sound group of a word's ending, or None.

        A whole-word rule wins outright; otherwise the longest matching
        suffix whose exception list does not name the word decides.  A word
        equal to a rule's suffix counts as a match.  Absence of a group is a
        normal outcome, not an error.
        """
        if not word:
            raise ValueError("cannot classify an empty word")
        try:
            return self._cache[word]
        except KeyError:
            pass
        group = self._whole_words.get(word)
        if group is None:
            for rule in self._suffixes:
                if word.endswith(rule.pattern) and word not in rule.exceptions:
                    group = rule.group
                    break
        self._cache[word] = group
        return group

    @classmethod
    def from_json_file(cls, path: str | Path) -> "RuleTable":
        """Load a rule table from its JSON file format."""
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorpusFormatError(f"cannot read rule table {path}: {exc}") from exc
        if doc.get("version") != 1:
            raise CorpusFormatError(f"rule table {path}: unsupported version {doc.get('version')!r}")
        rules = []
        try:
            for word, group in doc.get("whole_words", {}).items():
                rules.append(RhymeRule("whole_word", word, SoundGroup(group)))
            for entry in doc.get("suffixes", []):
                pattern = entry["pattern"].lstrip("-")
                rules.append(
                    RhymeRule(
                        "suffix",
                        pattern,
                        SoundGroup(entry["group"]),
                        frozenset(entry.get("exceptions", [])),
                    )
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusFormatError(f"rule table {path}: {exc}") from exc
        return cls(rules)


def default_rule_table() -> RuleTable:
    """The built-in ending rules for the 13 sound groups.

    hai/mai/jai and hain/main are carved out of the -i/-in rules and left
    unassigned; whole-word entries reclaim hai and hain for the ए group.
    """
    ww = [("hai", SoundGroup.E), ("hain", SoundGroup.E)]
    sx = [
        ("ein", SoundGroup.E, ()),
        ("e", SoundGroup.E, ()),
        ("ey", SoundGroup.E, ()),
        ("aa", SoundGroup.A, ()),
        ("a", SoundGroup.A, ()),
        ("yan", SoundGroup.A, ()),
        ("yaan", SoundGroup.A, ()),
        ("uan", SoundGroup.A, ()),
        ("u", SoundGroup.U, ()),
        ("oo", SoundGroup.U, ()),
        ("oon", SoundGroup.U, ()),
        ("uun", SoundGroup.U, ()),
        ("un", SoundGroup.U, ()),
        ("i", SoundGroup.I, ("hai", "mai", "jai")),
        ("ee", SoundGroup.I, ()),
        ("iin", SoundGroup.I, ()),
        ("in", SoundGroup.I, ("hain", "main")),
        ("d", SoundGroup.D, ()),
        ("k", SoundGroup.K, ()),
        ("h", SoundGroup.H, ()),
        ("r", SoundGroup.R, ()),
        ("m", SoundGroup.M, ()),
        ("t", SoundGroup.T, ()),
        ("l", SoundGroup.L, ()),
        ("b", SoundGroup.B, ()),
        ("p", SoundGroup.P, ()),
    ]
    rules = [RhymeRule("whole_word", w, g) for w, g in ww]
    rules += [RhymeRule("suffix", p, g, frozenset(ex)) for p, g, ex in sx]
    return RuleTable(rules)


class NormalizationTable:
    """Spelling-variant map: variant word -> canonical word, no chains."""

    def __init__(self, mapping: dict[str, str]):
        for variant, canonical in mapping.items():
            if canonical in mapping:
                raise CorpusFormatError(
                    f"normalization chain: {variant!r} -> {canonical!r} -> {mapping[canonical]!r}"
                )
        self.mapping = dict(mapping)

    def normalize(self, word: str) -> str:
        return self.mapping.get(word, word)

    def __len__(self) -> int:
        return len(self.mapping)

    @classmethod
    def empty(cls) -> "NormalizationTable":
        return cls({})

    @classmethod
    def from_tsv_file(cls, path: str | Path) -> "NormalizationTable":
        """Load a two-column (variant TAB canonical) table; # starts a comment."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CorpusFormatError(f"cannot read normalization table {path}: {exc}") from exc
        mapping = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise CorpusFormatError(f"{path}:{lineno}: expected 'variant<TAB>canonical'")
            mapping[parts[0]] = parts[1]
        return cls(mapping)


def default_normalization_table() -> NormalizationTable:
    """The small editable seed set of spelling-variant merges shipped as data."""
    ref = resources.files("bollyrics").joinpath("data/normalization.tsv")
    with resources.as_file(ref) as path:
        return NormalizationTable.from_tsv_file(path)


@dataclass(frozen=True)
class RhymePair:
    """The last two words of a line, filed under the final word's group."""

    penultimate: str
    final: str
    group: SoundGroup


def extract_pair(line: Line, table: RuleTable) -> Optional[RhymePair]:
    """Pull (second-to-last word, last word) when the last word has a group."""
    if len(line) < 2:
        return None
    group = table.classify(line[-1])
    if group is None:
        return None
    return RhymePair(penultimate=line[-2], final=line[-1], group=group)


@dataclass
class RhymeIndex:
    """Per-group rhyme-pair pools; duplicates keep corpus frequency."""

    groups: dict[SoundGroup, list[RhymePair]] = field(
        default_factory=lambda: {g: [] for g in SoundGroup}
    )

    def add(self, pair: RhymePair) -> None:
        self.groups[pair.group].append(pair)

    def nonempty_groups(self) -> list[SoundGroup]:
        return [g for g in SoundGroup if self.groups[g]]

    def total_pairs(self) -> int:
        return sum(len(pairs) for pairs in self.groups.values())

    def to_json(self) -> dict:
        return {
            "version": 1,
            "groups": {
                g.value: [[p.penultimate, p.final] for p in pairs]
                for g, pairs in self.groups.items()
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RhymeIndex":
        if doc.get("version") != 1:
            raise CorpusFormatError(f"rhyme index: unsupported version {doc.get('version')!r}")
        index = cls()
        try:
            for name, pairs in doc["groups"].items():
                group = SoundGroup(name)
                for penultimate, final in pairs:
                    index.add(RhymePair(penultimate, final, group))
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusFormatError(f"rhyme index: {exc}") from exc
        return index

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "RhymeIndex":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CorpusFormatError(f"cannot read rhyme index {path}: {exc}") from exc
        return cls.from_json(doc)


def build_index(
    corpus: Corpus,
    table: RuleTable,
    norm: Optional[NormalizationTable] = None,
) -> RhymeIndex:
    """Harvest normalized line-ending pairs into their sound groups.

    Lines with fewer than two tokens, or whose final word classifies to no
    group, contribute nothing.
    """
    norm = norm or NormalizationTable.empty()
    index = RhymeIndex()
    for line in corpus.iter_lines():
        normalized = [norm.normalize(t) for t in line]
        pair = extract_pair(normalized, table)
        if pair is not None:
            index.add(pair)
    return index
