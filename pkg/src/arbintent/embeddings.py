"""Ingestion of externally produced sentence-embedding files.

Format: UTF-8 text, first line ``#dim=D``, then one tab-separated row per
record: the record id followed by exactly D decimal floats.  Embeddings are
consumed as-is; generation is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, LabelIndex, Record
from .errors import DataError, NumericError


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(path: str) -> EmbeddingTable:
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open embeddings file {path}: {exc}") from exc
    with handle:
        header = handle.readline().rstrip("\n")
        if not header.startswith("#dim="):
            raise DataError(f"{path}: first line must be '#dim=D', got {header!r}")
        try:
            dim = int(header[len("#dim=") :])
        except ValueError:
            raise DataError(f"{path}: bad dimension in header {header!r}") from None
        if dim <= 0:
            raise DataError(f"{path}: dimension must be positive, got {dim}")
        vectors: dict[str, np.ndarray] = {}
        for rownum, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != dim + 1:
                raise DataError(
                    f"{path} row {rownum}: expected id + {dim} values, got {len(parts) - 1}"
                )
            rec_id = parts[0]
            if rec_id in vectors:
                raise DataError(f"{path} row {rownum}: duplicate id {rec_id!r}")
            try:
                vec = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            except ValueError:
                raise DataError(f"{path} row {rownum}: non-numeric value") from None
            if not np.all(np.isfinite(vec)):
                raise NumericError(f"{path} row {rownum}: non-finite embedding value")
            vectors[rec_id] = vec
    return EmbeddingTable(dim=dim, vectors=vectors)


def matrix_for_records(table: EmbeddingTable, records: list[Record]) -> np.ndarray:
    """Dense matrix with row i = embedding of records[i]; order is the records'."""
    missing = [r.id for r in records if r.id not in table.vectors]
    if missing:
        shown = ", ".join(repr(m) for m in missing[:5])
        raise DataError(f"{len(missing)} record ids missing from embeddings (first: {shown})")
    out = np.empty((len(records), table.dim), dtype=np.float64)
    for i, rec in enumerate(records):
        out[i] = table.vectors[rec.id]
    return out


def align(
    table: EmbeddingTable,
    corpus: Corpus,
    split: str = "all",
    labels: LabelIndex | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Embedding matrix plus aligned class ids for the selected split."""
    records = corpus.view(split)
    if not records:
        raise DataError(f"split {split!r} selects no records")
    X = matrix_for_records(table, records)
    index = labels if labels is not None else corpus.labels
    y = np.array([index.id_of(r.intent) if r.intent is not None else -1 for r in records], dtype=np.int64)
    if (y < 0).any():
        bad = records[int(np.argmin(y >= 0))].id
        raise DataError(f"record {bad} has no intent label; cannot align class ids")
    return X, y


def l2_normalize_rows(X: np.ndarray) -> np.ndarray:
    """Unit-normalize each row; zero rows stay zero."""
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return X / norms
