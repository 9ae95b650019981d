"""Unit tests for corpus loading, stats, and label indexing."""

import numpy as np
import pytest

from arbintent.corpus import (
    Corpus,
    CorpusFormat,
    LabelIndex,
    Record,
    concat_corpora,
    corpus_stats,
    encode_labels,
    load_corpus,
)
from arbintent.errors import DataError


def _write(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_load_basic_tsv(tmp_path):
    path = _write(
        tmp_path,
        "data.tsv",
        [
            "text\tintent",
            "pay my bill\tbill_payment",
            "lost card\tcard_loss",
            "pay again\tbill_payment",
        ],
    )
    corpus = load_corpus(path, CorpusFormat())
    assert len(corpus.records) == 3
    assert corpus.records[0].id == "1"  # fallback id is the 1-based data row number
    assert corpus.labels.labels == ("bill_payment", "card_loss")  # first seen
    assert all(r.split == "unassigned" for r in corpus.records)


def test_load_with_split_and_id_columns(tmp_path):
    path = _write(
        tmp_path,
        "data.tsv",
        [
            "id\ttext\tintent\tsplit",
            "a\tpay bill\tbill\ttrain",
            "b\tcard gone\tcard\tVALIDATION",
            "c\tmystery text\t\ttest",
        ],
    )
    fmt = CorpusFormat(id_col="id", split_col="split")
    corpus = load_corpus(path, fmt)
    assert [r.split for r in corpus.records] == ["train", "dev", "test"]
    assert corpus.records[2].intent is None  # empty label allowed on test rows
    assert corpus.labels.labels == ("bill", "card")


def test_load_errors_name_the_row(tmp_path):
    empty_text = _write(tmp_path, "a.tsv", ["text\tintent", "\tsomething"])
    with pytest.raises(DataError, match="row 2"):
        load_corpus(empty_text, CorpusFormat())

    missing_label = _write(tmp_path, "b.tsv", ["text\tintent", "hello there\t"])
    with pytest.raises(DataError, match="empty intent"):
        load_corpus(missing_label, CorpusFormat(), default_split="train")

    bad_split = _write(
        tmp_path, "c.tsv", ["text\tintent\tsplit", "hello there\tx\tholdout"]
    )
    with pytest.raises(DataError, match="unknown split"):
        load_corpus(bad_split, CorpusFormat(split_col="split"))


def test_load_missing_column_and_empty_file(tmp_path):
    path = _write(tmp_path, "a.tsv", ["text\tlabel", "hi there\tx"])
    with pytest.raises(DataError, match="missing column 'intent'"):
        load_corpus(path, CorpusFormat())
    empty = tmp_path / "empty.tsv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(DataError, match="empty"):
        load_corpus(str(empty), CorpusFormat())


def test_default_split_applies_only_to_unassigned_rows(tmp_path):
    path = _write(
        tmp_path,
        "a.tsv",
        ["text\tintent\tsplit", "one two\tx\t", "three four\ty\ttest"],
    )
    corpus = load_corpus(path, CorpusFormat(split_col="split"), default_split="dev")
    assert [r.split for r in corpus.records] == ["dev", "test"]


def test_test_split_labels_stay_out_of_the_index(tmp_path):
    path = _write(
        tmp_path,
        "a.tsv",
        [
            "text\tintent\tsplit",
            "one two\talpha\ttrain",
            "three four\tbeta\ttest",
        ],
    )
    corpus = load_corpus(path, CorpusFormat(split_col="split"))
    assert corpus.labels.labels == ("alpha",)


def test_corpus_stats_hand_math():
    records = (
        Record("0", "ab cd", "x", split="train"),
        Record("1", "x y z", "y", split="train"),
    )
    stats = corpus_stats(list(records))
    assert stats.n_sentences == 2
    assert stats.avg_words == pytest.approx(2.5)
    assert stats.avg_chars == pytest.approx(5.0)


def test_corpus_stats_empty_selection_is_an_error():
    corpus = Corpus((Record("0", "hi there", "x", split="train"),), LabelIndex(["x"]))
    with pytest.raises(DataError):
        corpus_stats(corpus, "dev")


def test_label_index_round_trip_and_unseen():
    index = LabelIndex.from_first_seen(["b", "a", "b", "c"])
    assert index.labels == ("b", "a", "c")
    assert index.id_of("c") == 2
    with pytest.raises(DataError, match="unseen label"):
        index.id_of("zzz")
    with pytest.raises(ValueError):
        LabelIndex(["a", "a"])


def test_encode_labels_aligns_with_view_order():
    records = (
        Record("0", "one two", "x", split="train"),
        Record("1", "three four", "y", split="dev"),
        Record("2", "five six", "y", split="train"),
    )
    corpus = Corpus(records, LabelIndex(["x", "y"]))
    np.testing.assert_array_equal(encode_labels(corpus, "train"), [0, 1])
    np.testing.assert_array_equal(encode_labels(corpus, "all"), [0, 1, 1])


def test_concat_corpora_rebuilds_labels_first_seen():
    a = Corpus((Record("0", "one two", "x", split="train"),), LabelIndex(["x"]))
    b = Corpus((Record("1", "three four", "y", split="dev"),), LabelIndex(["y"]))
    merged = concat_corpora([a, b])
    assert merged.labels.labels == ("x", "y")
    assert len(merged.records) == 2
    with pytest.raises(DataError):
        concat_corpora([])


def test_comma_delimiter_and_quoting(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text('text,intent\n"pay, please",bill\n', encoding="utf-8")
    corpus = load_corpus(str(path), CorpusFormat(delimiter=","))
    assert corpus.records[0].text == "pay, please"
