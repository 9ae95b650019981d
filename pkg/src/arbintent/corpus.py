"""Corpus ingestion for delimited intent-detection files.

Files are UTF-8 CSV/TSV with a header row.  Column names are configurable
because released data drops vary; the loader needs at least a text column
and (for training data) an intent column.  Records keep file order, and the
label index is assigned by first-seen order over non-test rows, so loading
the same file twice yields identical objects.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

SPLITS = ("train", "dev", "test", "unassigned")

# Accepted spellings in a split column.
_SPLIT_ALIASES = {
    "train": "train",
    "training": "train",
    "dev": "dev",
    "development": "dev",
    "val": "dev",
    "valid": "dev",
    "validation": "dev",
    "test": "test",
    "testing": "test",
    "": "unassigned",
}


@dataclass(frozen=True)
class Record:
    id: str
    text: str
    intent: str | None
    dialect: str | None = None
    split: str = "unassigned"


class LabelIndex:
    """Bijection between label strings and dense integer ids."""

    def __init__(self, labels: Iterable[str]):
        self.labels: tuple[str, ...] = tuple(labels)
        self._ids: dict[str, int] = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._ids) != len(self.labels):
            raise ValueError("duplicate labels in index")

    @classmethod
    def from_first_seen(cls, labels: Iterable[str]) -> "LabelIndex":
        seen: dict[str, None] = {}
        for lab in labels:
            seen.setdefault(lab, None)
        return cls(seen.keys())

    def id_of(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise DataError(f"unseen label {label!r}") from None

    def label_of(self, class_id: int) -> str:
        return self.labels[class_id]

    def __contains__(self, label: str) -> bool:
        return label in self._ids

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabelIndex) and self.labels == other.labels

    def __repr__(self) -> str:
        return f"LabelIndex({len(self)} labels)"


@dataclass(frozen=True)
class Corpus:
    records: tuple[Record, ...]
    labels: LabelIndex

    def view(self, split: str = "all") -> list[Record]:
        if split == "all":
            return list(self.records)
        if split not in SPLITS:
            raise ValueError(f"unknown split {split!r}")
        return [r for r in self.records if r.split == split]


@dataclass(frozen=True)
class CorpusStats:
    n_sentences: int
    avg_words: float
    avg_chars: float


@dataclass(frozen=True)
class CorpusFormat:
    """Delimiter plus column-name mapping for a corpus file."""

    delimiter: str = "\t"
    text_col: str = "text"
    label_col: str | None = "intent"
    id_col: str | None = None
    dialect_col: str | None = None
    split_col: str | None = None


def load_corpus(
    path: str,
    fmt: CorpusFormat = CorpusFormat(),
    require_labels: bool = True,
    default_split: str = "unassigned",
) -> Corpus:
    """Load one record per data row, in file order.

    Rows with an empty text cell are a load error naming the row; an empty
    intent on a train/dev row likewise.  Rows without a split assignment
    fall back to ``default_split`` (how per-split files are loaded).  The
    label index is built first-seen over rows whose split is not ``test``.
    """
    if default_split not in SPLITS:
        raise ValueError(f"unknown default split {default_split!r}")
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot open corpus file {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle, delimiter=fmt.delimiter)
        try:
            rows = list(reader)
        except csv.Error as exc:
            raise DataError(f"malformed quoting in {path} near line {reader.line_num}: {exc}") from exc
    if not rows:
        raise DataError(f"{path} is empty (no header row)")

    header = rows[0]
    col_pos = {name: i for i, name in enumerate(header)}
    required = [fmt.text_col]
    if fmt.label_col is not None and require_labels:
        required.append(fmt.label_col)
    for name in (fmt.id_col, fmt.dialect_col, fmt.split_col):
        if name is not None:
            required.append(name)
    for name in required:
        if name not in col_pos:
            raise DataError(f"{path}: missing column {name!r} (header has {header})")

    def cell(row: list[str], col: str | None) -> str | None:
        if col is None or col not in col_pos:
            return None
        pos = col_pos[col]
        return row[pos] if pos < len(row) else None

    records: list[Record] = []
    for rownum, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        text = cell(row, fmt.text_col)
        if text is None or not text.strip():
            raise DataError(f"{path} row {rownum}: empty text cell")
        raw_split = cell(row, fmt.split_col)
        key = raw_split.strip().lower() if raw_split is not None else ""
        if key not in _SPLIT_ALIASES:
            raise DataError(f"{path} row {rownum}: unknown split value {raw_split!r}")
        split = _SPLIT_ALIASES[key]
        if split == "unassigned":
            split = default_split
        intent = cell(row, fmt.label_col)
        intent = intent.strip() if intent is not None else None
        if not intent:
            intent = None
            if split in ("train", "dev"):
                raise DataError(f"{path} row {rownum}: empty intent on a {split} row")
        rec_id = cell(row, fmt.id_col)
        dialect = cell(row, fmt.dialect_col)
        records.append(
            Record(
                id=rec_id if rec_id else str(rownum - 1),
                text=text,
                intent=intent,
                dialect=dialect.strip() if dialect else None,
                split=split,
            )
        )

    labels = LabelIndex.from_first_seen(
        r.intent for r in records if r.split != "test" and r.intent is not None
    )
    return Corpus(records=tuple(records), labels=labels)


def concat_corpora(corpora: Sequence[Corpus]) -> Corpus:
    """Concatenate record lists; the label index is rebuilt first-seen."""
    if not corpora:
        raise DataError("nothing to concatenate")
    records: list[Record] = []
    for corpus in corpora:
        records.extend(corpus.records)
    labels = LabelIndex.from_first_seen(
        r.intent for r in records if r.split != "test" and r.intent is not None
    )
    return Corpus(records=tuple(records), labels=labels)


def corpus_stats(corpus_or_records: Corpus | Sequence[Record], split: str = "all") -> CorpusStats:
    """Sentence count, mean whitespace-token count, mean code-point length.

    Word counts use plain whitespace splitting (maximal non-whitespace runs),
    independent of the classifier token rule; character counts are over the
    raw text including internal spaces.
    """
    if isinstance(corpus_or_records, Corpus):
        records = corpus_or_records.view(split)
    else:
        records = list(corpus_or_records)
    if not records:
        raise DataError(f"split {split!r} selects no records")
    n = len(records)
    words = sum(len(r.text.split()) for r in records)
    chars = sum(len(r.text) for r in records)
    return CorpusStats(n_sentences=n, avg_words=words / n, avg_chars=chars / n)


def encode_labels(
    corpus: Corpus,
    split: str = "all",
    labels: LabelIndex | None = None,
) -> np.ndarray:
    """Integer class ids aligned with the records of the selected split."""
    index = labels if labels is not None else corpus.labels
    records = corpus.view(split)
    ids = np.empty(len(records), dtype=np.int64)
    for i, rec in enumerate(records):
        if rec.intent is None:
            raise DataError(f"record {rec.id} has no intent label")
        ids[i] = index.id_of(rec.intent)
    return ids
