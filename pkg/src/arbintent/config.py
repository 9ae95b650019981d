"""Experiment configuration: feature specs, named presets, grid enumeration.

An experiment is either a weighted TF-IDF union over the three analyzer
kinds or a logistic regression over precomputed sentence embeddings.  N-gram
sizes are given as a (word, char, char_wb) triple; the interpretation flag
decides whether entry ``k`` means the range (1, k) or the exact range
(k, k).  Configs serialize to a small JSON schema (version 1) and round-trip
exactly, so every trained model can record the config that produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import product
from typing import Any

from .analyzers import AnalyzerConfig
from .corpus import CorpusFormat
from .errors import DataError
from .linear_models import TrainConfig
from .vectorizer import UnionSpec

CONFIG_SCHEMA_VERSION = 1
INTERPRETATIONS = ("range_from_1", "exact_n")
ANALYZER_ORDER = ("word", "char", "char_wb")


@dataclass(frozen=True)
class TfidfFeatures:
    """N-gram triple in (word, char, char_wb) order; a None entry omits the block."""

    ngram_triple: tuple[int | None, int | None, int | None]
    weights: tuple[float | None, float | None, float | None] = (1.0, 1.0, 1.0)
    interpretation: str = "range_from_1"
    min_df: int = 1
    max_df: float = 1.0

    def __post_init__(self) -> None:
        if self.interpretation not in INTERPRETATIONS:
            raise ValueError(f"unknown interpretation {self.interpretation!r}")
        if all(n is None for n in self.ngram_triple):
            raise ValueError("ngram triple omits every analyzer block")
        for n, w in zip(self.ngram_triple, self.weights):
            if n is not None and w is None:
                raise ValueError("active block is missing its weight")

    def to_union_spec(self) -> UnionSpec:
        blocks = []
        for kind, n, w in zip(ANALYZER_ORDER, self.ngram_triple, self.weights):
            if n is None:
                continue
            lo = 1 if self.interpretation == "range_from_1" else n
            blocks.append((AnalyzerConfig(kind, lo, n), float(w if w is not None else 1.0)))
        return UnionSpec(tuple(blocks))


@dataclass(frozen=True)
class EmbeddingFeatures:
    """Consume precomputed sentence embeddings; the generator is external."""

    descriptor: str
    normalize: bool = False


@dataclass(frozen=True)
class DataConfig:
    """Where the data lives and how its columns are named."""

    path: str | None = None  # single file carrying a split column
    train_path: str | None = None
    eval_path: str | None = None
    embeddings_path: str | None = None
    fmt: CorpusFormat = CorpusFormat()


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    features: TfidfFeatures | EmbeddingFeatures
    train: TrainConfig = TrainConfig()
    data: DataConfig | None = None

    def with_data(self, data: DataConfig | None) -> "ExperimentConfig":
        return replace(self, data=data)


def _triple_to_json(t: tuple) -> list:
    return [v for v in t]


def config_to_dict(config: ExperimentConfig) -> dict[str, Any]:
    feats: dict[str, Any]
    if isinstance(config.features, TfidfFeatures):
        feats = {
            "mode": "tfidf_union",
            "ngram_triple": _triple_to_json(config.features.ngram_triple),
            "weights": _triple_to_json(config.features.weights),
            "interpretation": config.features.interpretation,
            "min_df": config.features.min_df,
            "max_df": config.features.max_df,
        }
    else:
        feats = {
            "mode": "embeddings",
            "descriptor": config.features.descriptor,
            "normalize": config.features.normalize,
        }
    out: dict[str, Any] = {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "name": config.name,
        "features": feats,
        "train": {
            "classifier": config.train.classifier,
            "C": config.train.C,
            "class_weight": config.train.class_weight_mode,
            "tol": config.train.tol,
            "max_epochs": config.train.max_epochs,
            "seed": config.train.seed,
            "multi_class": config.train.multi_class,
        },
    }
    if config.data is not None:
        out["data"] = {
            "path": config.data.path,
            "train_path": config.data.train_path,
            "eval_path": config.data.eval_path,
            "embeddings_path": config.data.embeddings_path,
            "format": {
                "delimiter": config.data.fmt.delimiter,
                "text_col": config.data.fmt.text_col,
                "label_col": config.data.fmt.label_col,
                "id_col": config.data.fmt.id_col,
                "dialect_col": config.data.fmt.dialect_col,
                "split_col": config.data.fmt.split_col,
            },
        }
    return out


def config_from_dict(raw: dict[str, Any]) -> ExperimentConfig:
    try:
        version = raw["schema_version"]
        if version != CONFIG_SCHEMA_VERSION:
            raise DataError(f"unsupported config schema version {version!r} (expected {CONFIG_SCHEMA_VERSION})")
        fs = raw["features"]
        features: TfidfFeatures | EmbeddingFeatures
        if fs["mode"] == "tfidf_union":
            features = TfidfFeatures(
                ngram_triple=tuple(fs["ngram_triple"]),
                weights=tuple(fs.get("weights", (1.0, 1.0, 1.0))),
                interpretation=fs.get("interpretation", "range_from_1"),
                min_df=fs.get("min_df", 1),
                max_df=fs.get("max_df", 1.0),
            )
        elif fs["mode"] == "embeddings":
            features = EmbeddingFeatures(
                descriptor=fs["descriptor"], normalize=fs.get("normalize", False)
            )
        else:
            raise DataError(f"unknown feature mode {fs['mode']!r}")
        tr = raw.get("train", {})
        train = TrainConfig(
            classifier=tr.get("classifier", "linear_svc"),
            C=tr.get("C", 1.0),
            class_weight_mode=tr.get("class_weight", "uniform"),
            tol=tr.get("tol", 1e-4),
            max_epochs=tr.get("max_epochs", 1000),
            seed=tr.get("seed", 42),
            multi_class=tr.get("multi_class", "multinomial"),
        )
        data = None
        if "data" in raw and raw["data"] is not None:
            d = raw["data"]
            f = d.get("format", {})
            data = DataConfig(
                path=d.get("path"),
                train_path=d.get("train_path"),
                eval_path=d.get("eval_path"),
                embeddings_path=d.get("embeddings_path"),
                fmt=CorpusFormat(
                    delimiter=f.get("delimiter", "\t"),
                    text_col=f.get("text_col", "text"),
                    label_col=f.get("label_col", "intent"),
                    id_col=f.get("id_col"),
                    dialect_col=f.get("dialect_col"),
                    split_col=f.get("split_col"),
                ),
            )
        return ExperimentConfig(name=raw.get("name", "custom"), features=features, train=train, data=data)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed experiment config: {exc}") from exc


def config_key(config: ExperimentConfig) -> str:
    """Canonical identity of a config, ignoring its name and data paths."""
    d = config_to_dict(config.with_data(None))
    d.pop("name", None)
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def load_config_file(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot open config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)


def _svc(C: float = 1.0, class_weight: str = "uniform") -> TrainConfig:
    return TrainConfig(classifier="linear_svc", C=C, class_weight_mode=class_weight)


def _tfidf(triple, weights=(1.0, 1.0, 1.0)) -> TfidfFeatures:
    return TfidfFeatures(ngram_triple=triple, weights=weights)


# Named presets for the recorded experiment grid on ArBanking77 (PAL).
# Triples are (word, char, char_wb) n-gram sizes, interpreted as (1, k)
# ranges by default; "tw" weights below scale the per-block unit norms.
PRESETS: dict[str, ExperimentConfig] = {
    "exp1-row1": ExperimentConfig("exp1-row1", _tfidf((1, None, None), (1.0, None, None)), _svc()),
    "exp1-row2": ExperimentConfig("exp1-row2", _tfidf((1, 1, 1)), _svc()),
    "exp1-row3": ExperimentConfig("exp1-row3", _tfidf((1, 5, 5)), _svc()),
    "exp1-row4": ExperimentConfig("exp1-row4", _tfidf((3, 5, 5)), _svc()),
    "exp1-row5": ExperimentConfig("exp1-row5", _tfidf((3, 5, 5)), _svc(C=5.0, class_weight="balanced")),
    "exp2-row6": ExperimentConfig(
        "exp2-row6", _tfidf((3, 5, 5), (0.65, 0.85, 0.85)), _svc(C=4.0, class_weight="balanced")
    ),
    "exp2-row7": ExperimentConfig("exp2-row7", _tfidf((3, 4, 5), (0.45, 0.5, 0.75)), _svc(C=4.0)),
    "exp2-row8": ExperimentConfig("exp2-row8", _tfidf((4, 4, 4), (0.45, 0.5, 0.75)), _svc(C=5.0)),
    "exp2-row9": ExperimentConfig("exp2-row9", _tfidf((4, 4, 4), (0.45, 0.5, 0.75)), _svc(C=6.0)),
    "exp4-row4": ExperimentConfig(
        "exp4-row4",
        EmbeddingFeatures("xlm-r-bert-base-nli-stsb-mean-tokens"),
        TrainConfig(classifier="logistic_regression", C=1.0),
    ),
    "exp4-row5": ExperimentConfig(
        "exp4-row5",
        EmbeddingFeatures("xlm-r-100langs-bert-base-nli-stsb-mean-token"),
        TrainConfig(classifier="logistic_regression", C=1.0),
    ),
}

# Reference dev-set micro-F1 (percent) recorded for each preset on the
# ArBanking77 PAL split.  Note exp2-row9 scores above exp2-row8 even though
# row 8 is the configuration usually quoted as best; both are kept.
REFERENCE_DEV_F1: dict[str, float] = {
    "exp1-row1": 88.01,
    "exp1-row2": 89.4,
    "exp1-row3": 92.11,
    "exp1-row4": 92.28,
    "exp1-row5": 92.37,
    "exp2-row6": 92.53,
    "exp2-row7": 92.86,
    "exp2-row8": 93.02,
    "exp2-row9": 93.08,
    "exp4-row4": 75.76,
    "exp4-row5": 75.76,
}


def get_preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise DataError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}") from None


def weight_cube(step: float = 0.1) -> tuple[tuple[float, float, float], ...]:
    """All weight triples over the grid {step, 2*step, ..., 1.0} cubed."""
    levels = [round(i * step, 10) for i in range(1, int(round(1.0 / step)) + 1)]
    return tuple(product(levels, repeat=3))


@dataclass(frozen=True)
class GridSpec:
    """Cartesian sweep over n-gram triples, weight triples, and C values."""

    ngram_triples: tuple[tuple[int | None, int | None, int | None], ...]
    weight_triples: tuple[tuple[float | None, float | None, float | None], ...]
    c_values: tuple[float, ...]
    classifier: str = "linear_svc"
    class_weight: str = "uniform"
    interpretation: str = "range_from_1"
    tol: float = 1e-4
    max_epochs: int = 1000
    seed: int = 42

    def __post_init__(self) -> None:
        if not (self.ngram_triples and self.weight_triples and self.c_values):
            raise ValueError("grid enumerations must be non-empty")

    def enumerate(self) -> list[ExperimentConfig]:
        configs = []
        for i, (triple, weights, c) in enumerate(
            product(self.ngram_triples, self.weight_triples, self.c_values)
        ):
            configs.append(
                ExperimentConfig(
                    name=f"grid-{i:05d}",
                    features=TfidfFeatures(
                        ngram_triple=tuple(triple),
                        weights=tuple(weights),
                        interpretation=self.interpretation,
                    ),
                    train=TrainConfig(
                        classifier=self.classifier,
                        C=c,
                        class_weight_mode=self.class_weight,
                        tol=self.tol,
                        max_epochs=self.max_epochs,
                        seed=self.seed,
                    ),
                )
            )
        return configs


def grid_from_dict(raw: dict[str, Any]) -> GridSpec:
    try:
        if raw.get("schema_version", CONFIG_SCHEMA_VERSION) != CONFIG_SCHEMA_VERSION:
            raise DataError(f"unsupported grid schema version {raw.get('schema_version')!r}")
        weights = raw["weight_triples"]
        if weights == "cube":
            weight_triples = weight_cube()
        else:
            weight_triples = tuple(tuple(w) for w in weights)
        return GridSpec(
            ngram_triples=tuple(tuple(t) for t in raw["ngram_triples"]),
            weight_triples=weight_triples,
            c_values=tuple(raw.get("c_values", [1.0])),
            classifier=raw.get("classifier", "linear_svc"),
            class_weight=raw.get("class_weight", "uniform"),
            interpretation=raw.get("interpretation", "range_from_1"),
            tol=raw.get("tol", 1e-4),
            max_epochs=raw.get("max_epochs", 1000),
            seed=raw.get("seed", 42),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed grid spec: {exc}") from exc


def load_grid_file(path: str) -> GridSpec:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot open grid file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"grid file {path} is not valid JSON: {exc}") from exc
    return grid_from_dict(raw)
