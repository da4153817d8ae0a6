"""Shared builders and independent oracles for the test suite."""

import random

from bollyrics.corpus import START_TOKEN, Corpus, Song

# words generated per group end with these; avoids the carved-out exception
# words (hai/mai/jai/hain/main) by construction because of the long prefixes
GROUP_SUFFIXES = {
    "E": "ein",
    "A": "a",
    "U": "u",
    "I": "ee",
    "R": "r",
    "M": "m",
    "T": "t",
    "L": "l",
}

CONSONANTS = "bcdgjklmprstvz"
VOWELS = "aeiou"


def random_word(rng: random.Random, suffix: str = "") -> str:
    prefix = "".join(rng.choice(CONSONANTS) + rng.choice(VOWELS) for _ in range(2))
    return prefix + suffix


def make_random_corpus(
    rng: random.Random, max_lines: int = 20, max_vocab: int = 15
) -> Corpus:
    """Small corpus with arbitrary words; guaranteed one trainable line."""
    vocab_size = rng.randint(3, max_vocab)
    vocab = []
    while len(vocab) < vocab_size:
        word = random_word(rng, rng.choice(["", *GROUP_SUFFIXES.values()]))
        if word not in vocab:
            vocab.append(word)
    n_lines = rng.randint(1, max_lines)
    lines = [
        [rng.choice(vocab) for _ in range(rng.randint(1, 8))] for _ in range(n_lines)
    ]
    lines.append([rng.choice(vocab), rng.choice(vocab)])  # at least one trainable
    return Corpus([Song("synthetic", None, lines)])


def make_generation_corpus(rng: random.Random, n_lines: int = 120) -> Corpus:
    """Corpus whose line endings are spread across many sound groups."""
    pools = {
        group: [random_word(rng, suffix) for _ in range(4)]
        for group, suffix in GROUP_SUFFIXES.items()
    }
    fillers = [random_word(rng) for _ in range(20)]
    lines = []
    groups = list(pools)
    for i in range(n_lines):
        body = [rng.choice(fillers) for _ in range(rng.randint(1, 6))]
        body.append(rng.choice(pools[groups[i % len(groups)]]))
        lines.append(body)
    return Corpus([Song("synthetic generation corpus", None, lines)])


def naive_trigram_counts(lines) -> dict:
    """Brute-force recount oracle, word-keyed, independent of the kernels."""
    counts: dict = {}
    for line in lines:
        if len(line) < 2:
            continue
        seq = list(reversed(line)) + [START_TOKEN]
        for i in range(len(seq) - 2):
            inner = counts.setdefault((seq[i], seq[i + 1]), {})
            inner[seq[i + 2]] = inner.get(seq[i + 2], 0) + 1
    return counts


def model_counts_by_word(model) -> dict:
    """Translate a model's id-keyed counts into word keys for comparison."""
    return {
        (model.tokens[w1], model.tokens[w2]): {
            model.tokens[w3]: c for w3, c in inner.items()
        }
        for (w1, w2), inner in model.counts_dict().items()
    }
