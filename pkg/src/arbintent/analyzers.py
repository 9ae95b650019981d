"""N-gram analyzers: turn a query string into a multiset of feature strings.

Three analyzer kinds are supported:

* ``word``    -- n-grams over word tokens, joined by single spaces.
* ``char``    -- n-grams over the code points of the whitespace-normalized
                 string (spaces participate in the n-grams).
* ``char_wb`` -- character n-grams constrained to word boundaries: each
                 token is padded with one space on both sides and n-grams
                 never cross tokens.

All operations are pure; a feature multiset is a ``collections.Counter``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

ANALYZER_KINDS = ("word", "char", "char_wb")

# Hard cap on n-gram sizes; anything larger is a config mistake.
MAX_NGRAM = 10

_WHITESPACE = re.compile(r"\s+")
# Maximal runs of word characters (letters, digits, underscore), length >= 2.
_TOKEN = re.compile(r"\w\w+")


@dataclass(frozen=True)
class AnalyzerConfig:
    """One analyzer: kind plus inclusive n-gram range."""

    kind: str
    ngram_min: int
    ngram_max: int

    def __post_init__(self) -> None:
        if self.kind not in ANALYZER_KINDS:
            raise ValueError(f"unknown analyzer kind {self.kind!r}; expected one of {ANALYZER_KINDS}")
        if not (1 <= self.ngram_min <= self.ngram_max <= MAX_NGRAM):
            raise ValueError(
                f"invalid n-gram range ({self.ngram_min}, {self.ngram_max}); "
                f"need 1 <= min <= max <= {MAX_NGRAM}"
            )


def normalize_whitespace(text: str) -> str:
    """Replace every maximal run of Unicode whitespace with a single space.

    Leading/trailing runs become a single leading/trailing space; nothing
    is trimmed.
    """
    return _WHITESPACE.sub(" ", text)


def tokenize_words(text: str) -> list[str]:
    """Maximal runs of word characters, keeping only runs of >= 2 code points."""
    return _TOKEN.findall(text)


def word_ngrams(tokens: list[str], ngram_range: tuple[int, int]) -> Counter[str]:
    """All contiguous token windows of each size in the range, space-joined."""
    lo, hi = ngram_range
    feats: Counter[str] = Counter()
    t = len(tokens)
    for n in range(lo, hi + 1):
        if n == 1:
            feats.update(tokens)
            continue
        for i in range(t - n + 1):
            feats[" ".join(tokens[i : i + n])] += 1
    return feats


def char_ngrams(text: str, ngram_range: tuple[int, int]) -> Counter[str]:
    """All contiguous code-point windows of each size in the range.

    The caller is expected to whitespace-normalize first; spaces participate
    in the n-grams.
    """
    lo, hi = ngram_range
    feats: Counter[str] = Counter()
    m = len(text)
    for n in range(lo, hi + 1):
        for i in range(m - n + 1):
            feats[text[i : i + n]] += 1
    return feats


def char_wb_ngrams(text: str, ngram_range: tuple[int, int]) -> Counter[str]:
    """Character n-grams that never cross word boundaries.

    Each whitespace-delimited token ``w`` is padded to ``" " + w + " "`` and
    its code-point windows are enumerated per n-gram size, ascending.  If the
    first window of some size already covers the whole padded token (padded
    length <= n), the padded token is emitted exactly once and larger sizes
    are skipped for that token.
    """
    lo, hi = ngram_range
    feats: Counter[str] = Counter()
    for token in normalize_whitespace(text).split():
        padded = " " + token + " "
        m = len(padded)
        for n in range(lo, hi + 1):
            feats[padded[:n]] += 1
            if m <= n:
                break
            for i in range(1, m - n + 1):
                feats[padded[i : i + n]] += 1
    return feats


def analyze(text: str, config: AnalyzerConfig) -> Counter[str]:
    """Dispatch a raw string through the configured analyzer."""
    rng = (config.ngram_min, config.ngram_max)
    if config.kind == "word":
        return word_ngrams(tokenize_words(text), rng)
    if config.kind == "char":
        return char_ngrams(normalize_whitespace(text), rng)
    return char_wb_ngrams(text, rng)
