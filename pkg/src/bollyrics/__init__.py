"""Rhyme-scheme constrained lyric generation for romanized Hindi songs.

The pipeline: load and tokenize a lyrics corpus, classify line-ending words
into 13 Devanagri sound groups, harvest (penultimate, final) rhyme pairs,
train a reverse-direction trigram model, and grow lines backward from rhyming
endings so every paragraph follows a user-supplied scheme such as ABAB.
"""

__version__ = "0.1.0"

from .corpus import (
    START_TOKEN,
    Corpus,
    CorpusStats,
    Line,
    Song,
    compute_stats,
    export_sequences,
    load_corpus,
    tokenize_line,
)
from .errors import (
    AllocationError,
    BollyricsError,
    CorpusFormatError,
    ModelFormatError,
    SchemeError,
    UnseenContextError,
)
from .evaluate import AnnotationMatrix, fleiss_kappa, load_annotations, makes_sense_rate
from .generator import (
    GeneratedSong,
    GroupAllocation,
    RhymeScheme,
    allocate_groups,
    generate_song,
    parse_scheme,
    render,
)
from .ngram import SamplerConfig, TrigramModel, generate_line, reverse_decompose, train
from .rhyme import (
    NormalizationTable,
    RhymeIndex,
    RhymePair,
    RhymeRule,
    RuleTable,
    SoundGroup,
    build_index,
    default_normalization_table,
    default_rule_table,
    extract_pair,
)

__all__ = [
    "START_TOKEN",
    "AllocationError",
    "AnnotationMatrix",
    "BollyricsError",
    "Corpus",
    "CorpusFormatError",
    "CorpusStats",
    "GeneratedSong",
    "GroupAllocation",
    "Line",
    "ModelFormatError",
    "NormalizationTable",
    "RhymeIndex",
    "RhymePair",
    "RhymeRule",
    "RhymeScheme",
    "RuleTable",
    "SamplerConfig",
    "SchemeError",
    "Song",
    "SoundGroup",
    "TrigramModel",
    "UnseenContextError",
    "allocate_groups",
    "build_index",
    "compute_stats",
    "default_normalization_table",
    "default_rule_table",
    "export_sequences",
    "extract_pair",
    "fleiss_kappa",
    "generate_line",
    "generate_song",
    "load_annotations",
    "load_corpus",
    "makes_sense_rate",
    "parse_scheme",
    "render",
    "reverse_decompose",
    "tokenize_line",
    "train",
]
