"""Unit tests for the three n-gram analyzers."""

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arbintent.analyzers import (
    AnalyzerConfig,
    analyze,
    char_ngrams,
    char_wb_ngrams,
    normalize_whitespace,
    tokenize_words,
    word_ngrams,
)


def test_config_validation():
    with pytest.raises(ValueError):
        AnalyzerConfig("word", 0, 1)
    with pytest.raises(ValueError):
        AnalyzerConfig("word", 3, 2)
    with pytest.raises(ValueError):
        AnalyzerConfig("sentence", 1, 1)
    with pytest.raises(ValueError):
        AnalyzerConfig("char", 1, 99)


def test_tokenize_drops_single_char_tokens():
    assert tokenize_words("I paid a fee") == ["paid", "fee"]
    assert tokenize_words("can't stop") == ["can", "stop"]
    assert tokenize_words("") == []


def test_tokenize_keeps_digits_and_arabic():
    assert tokenize_words("3atini 2l ra9om") == ["3atini", "2l", "ra9om"]
    assert tokenize_words("كيف أفتح حساب") == ["كيف", "أفتح", "حساب"]


def test_normalize_whitespace_collapses_runs_without_trimming():
    assert normalize_whitespace("a\t\nb") == "a b"
    assert normalize_whitespace(" a  b ") == " a b "
    assert normalize_whitespace("") == ""


def test_word_bigrams_join_with_single_space():
    got = word_ngrams(["one", "two", "three"], (2, 2))
    assert got == Counter({"one two": 1, "two three": 1})


def test_char_ngrams_count_repeats():
    assert char_ngrams("aaa", (2, 2)) == Counter({"aa": 2})


def test_char_ngrams_span_spaces():
    assert char_ngrams("ab cd", (2, 2)) == Counter({"ab": 1, "b ": 1, " c": 1, "cd": 1})


def test_char_wb_pads_tokens_and_stays_inside_them():
    got = char_wb_ngrams("go now", (3, 3))
    assert got == Counter({" go": 1, "go ": 1, " no": 1, "now": 1, "ow ": 1})


def test_char_wb_short_token_emitted_once_skipping_larger_n():
    assert char_wb_ngrams("ab", (4, 5)) == Counter({" ab ": 1})


def test_analyze_dispatch_matches_direct_calls():
    text = "send money  now"
    assert analyze(text, AnalyzerConfig("word", 1, 2)) == word_ngrams(
        tokenize_words(text), (1, 2)
    )
    assert analyze(text, AnalyzerConfig("char", 2, 3)) == char_ngrams(
        normalize_whitespace(text), (2, 3)
    )
    assert analyze(text, AnalyzerConfig("char_wb", 3, 3)) == char_wb_ngrams(text, (3, 3))


_texts = st.text(
    alphabet=st.sampled_from(list("ab \tز")),
    max_size=30,
)


@given(_texts, st.integers(1, 4))
def test_char_gram_count_identity(text, n):
    # over the normalized text, the number of n-grams is max(0, len - n + 1)
    norm = normalize_whitespace(text)
    got = analyze(text, AnalyzerConfig("char", n, n))
    assert sum(got.values()) == max(0, len(norm) - n + 1)


@given(_texts, st.integers(1, 4))
def test_char_wb_grams_never_cross_tokens(text, n):
    for gram in char_wb_ngrams(text, (n, n)):
        # interior spaces would mean the gram crossed a token boundary
        assert " " not in gram.strip(" ")


@given(_texts)
def test_word_grams_use_only_kept_tokens(text):
    tokens = tokenize_words(text)
    grams = word_ngrams(tokens, (1, 2))
    for gram in grams:
        for part in gram.split(" "):
            assert part in tokens


@given(_texts, st.integers(1, 3), st.integers(0, 2))
def test_range_is_union_of_exact_sizes(text, lo, extra):
    hi = lo + extra
    total = Counter()
    for n in range(lo, hi + 1):
        total += analyze(text, AnalyzerConfig("char", n, n))
    assert analyze(text, AnalyzerConfig("char", lo, hi)) == total
