"""Per-analyzer TF-IDF blocks and their weighted concatenation.

Each block is fitted independently: vocabulary over all features seen in the
fitting texts (column order lexicographic by feature string), document
frequencies, and smoothed IDF ``ln((1 + n) / (1 + df)) + 1``.  A document
transforms to raw term counts times IDF, L2-normalized per block.  The union
concatenates the per-block unit vectors, each scaled by its block weight;
there is no global renormalization afterwards, so the weights act directly
as block-norm multipliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .analyzers import AnalyzerConfig, analyze
from .errors import DataError


@dataclass(frozen=True)
class SparseVector:
    """Strictly increasing (index, value) pairs plus the vector dimension."""

    indices: np.ndarray
    values: np.ndarray
    dim: int

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))


@dataclass
class Vocabulary:
    """Feature string -> dense column index, with per-column df counts."""

    index: dict[str, int]
    df: np.ndarray
    n_docs: int

    def __len__(self) -> int:
        return len(self.index)

    @property
    def feature_names(self) -> list[str]:
        names = [""] * len(self.index)
        for feat, col in self.index.items():
            names[col] = feat
        return names


def smoothed_idf(df: np.ndarray, n_docs: int) -> np.ndarray:
    return np.log((1.0 + n_docs) / (1.0 + df.astype(np.float64))) + 1.0


@dataclass
class TfidfBlock:
    config: AnalyzerConfig
    vocab: Vocabulary
    idf: np.ndarray

    @property
    def width(self) -> int:
        return len(self.vocab)


@dataclass(frozen=True)
class UnionSpec:
    """Ordered (analyzer, weight) pairs; the order fixes the block order."""

    blocks: tuple[tuple[AnalyzerConfig, float], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("UnionSpec needs at least one block")
        for config, weight in self.blocks:
            if not (0.0 < weight <= 1.0):
                raise ValueError(f"block weight {weight} for {config.kind} outside (0, 1]")


@dataclass
class UnionVectorizer:
    blocks: list[TfidfBlock]
    weights: list[float]
    offsets: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.offsets:
            offs = [0]
            for block in self.blocks:
                offs.append(offs[-1] + block.width)
            self.offsets = offs

    @property
    def dim(self) -> int:
        return self.offsets[-1]


def fit_block(
    texts: Sequence[str],
    config: AnalyzerConfig,
    min_df: int = 1,
    max_df: float = 1.0,
) -> TfidfBlock:
    """Fit vocabulary, df, and IDF for one analyzer over the given texts."""
    if not texts:
        raise DataError("cannot fit a TF-IDF block on an empty text list")
    n = len(texts)
    df_counts: dict[str, int] = {}
    for text in texts:
        for feat in analyze(text, config):
            df_counts[feat] = df_counts.get(feat, 0) + 1
    cap = max_df * n
    kept = sorted(f for f, d in df_counts.items() if d >= min_df and d <= cap)
    if not kept:
        raise DataError(
            f"fitting {config.kind}({config.ngram_min},{config.ngram_max}) yielded zero features"
        )
    index = {feat: col for col, feat in enumerate(kept)}
    df = np.array([df_counts[feat] for feat in kept], dtype=np.int64)
    vocab = Vocabulary(index=index, df=df, n_docs=n)
    return TfidfBlock(config=config, vocab=vocab, idf=smoothed_idf(df, n))


def transform_block(block: TfidfBlock, text: str) -> SparseVector:
    """Raw counts of in-vocabulary features times IDF, L2-normalized.

    Out-of-vocabulary features are ignored; a document with no in-vocabulary
    features yields the zero vector.
    """
    index = block.vocab.index
    pairs = sorted(
        (index[feat], count) for feat, count in analyze(text, block.config).items() if feat in index
    )
    if not pairs:
        return SparseVector(np.empty(0, dtype=np.int64), np.empty(0), block.width)
    cols = np.array([c for c, _ in pairs], dtype=np.int64)
    values = np.array([cnt for _, cnt in pairs], dtype=np.float64) * block.idf[cols]
    values /= math.sqrt(float(np.dot(values, values)))
    return SparseVector(cols, values, block.width)


def fit_union(
    texts: Sequence[str],
    spec: UnionSpec,
    min_df: int = 1,
    max_df: float = 1.0,
) -> UnionVectorizer:
    """Fit every block of the union spec independently on the same texts."""
    blocks: list[TfidfBlock] = []
    for i, (config, _) in enumerate(spec.blocks):
        try:
            blocks.append(fit_block(texts, config, min_df=min_df, max_df=max_df))
        except DataError as exc:
            raise DataError(f"block {i} ({config.kind}): {exc}") from exc
    return UnionVectorizer(blocks=blocks, weights=[w for _, w in spec.blocks])


def transform_union(vec: UnionVectorizer, text: str) -> SparseVector:
    """Weighted concatenation of the per-block vectors, no global renorm."""
    all_idx: list[np.ndarray] = []
    all_val: list[np.ndarray] = []
    for block, weight, offset in zip(vec.blocks, vec.weights, vec.offsets):
        sub = transform_block(block, text)
        if sub.indices.size:
            all_idx.append(sub.indices + offset)
            all_val.append(sub.values * weight)
    if not all_idx:
        return SparseVector(np.empty(0, dtype=np.int64), np.empty(0), vec.dim)
    return SparseVector(np.concatenate(all_idx), np.concatenate(all_val), vec.dim)


def stack_rows(rows: Sequence[SparseVector], dim: int | None = None) -> sp.csr_matrix:
    """Row-major sparse matrix from per-document sparse vectors."""
    if dim is None:
        if not rows:
            raise ValueError("cannot infer dimension from zero rows")
        dim = rows[0].dim
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    for i, row in enumerate(rows):
        if row.dim != dim:
            raise ValueError(f"row {i} has dimension {row.dim}, expected {dim}")
        indptr[i + 1] = indptr[i] + row.indices.size
    nnz = int(indptr[-1])
    indices = np.empty(nnz, dtype=np.int64)
    data = np.empty(nnz, dtype=np.float64)
    for i, row in enumerate(rows):
        indices[indptr[i] : indptr[i + 1]] = row.indices
        data[indptr[i] : indptr[i + 1]] = row.values
    return sp.csr_matrix((data, indices, indptr), shape=(len(rows), dim))


def transform_many(vec: UnionVectorizer, texts: Sequence[str]) -> sp.csr_matrix:
    """Transform texts in order into one CSR matrix (output order = input order)."""
    return stack_rows([transform_union(vec, t) for t in texts], vec.dim)
