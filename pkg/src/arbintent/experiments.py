"""Train, evaluate, and sweep configurations end to end.

``train_model`` fits a config on one split and returns a persistable bundle;
``evaluate_bundle`` scores held-out records, extending the label set so gold
labels never seen in training count as always-wrong instead of crashing.
``grid_search`` enumerates a ``GridSpec``, persists one JSON line per
combination as it finishes, resumes by skipping combinations already on
disk, and returns successful runs ranked by dev micro-F1.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bundle import ModelBundle
from .config import (
    ExperimentConfig,
    GridSpec,
    TfidfFeatures,
    config_key,
    config_to_dict,
)
from .corpus import Corpus, LabelIndex, Record
from .embeddings import EmbeddingTable, l2_normalize_rows, matrix_for_records
from .errors import ArbIntentError, DataError
from .evaluation import EvalReport, evaluate_ids
from .linear_models import (
    compute_class_weights,
    predict_ids,
    train_linear_svc,
    train_logreg,
)
from .vectorizer import fit_union, transform_many


def _labeled(records: Sequence[Record], what: str) -> list[str]:
    labels = []
    for rec in records:
        if rec.intent is None:
            raise DataError(f"{what} record {rec.id} has no intent label")
        labels.append(rec.intent)
    return labels


def train_model(
    config: ExperimentConfig,
    corpus: Corpus,
    train_split: str = "train",
    embeddings: EmbeddingTable | None = None,
    n_jobs: int = 1,
) -> ModelBundle:
    """Fit the configured features and classifier on one split."""
    records = corpus.view(train_split)
    if not records:
        raise DataError(f"split {train_split!r} selects no records")
    gold = _labeled(records, "training")
    labels = LabelIndex.from_first_seen(gold)
    y = np.fromiter((labels.id_of(lab) for lab in gold), dtype=np.int64, count=len(gold))

    vectorizer = None
    if isinstance(config.features, TfidfFeatures):
        texts = [rec.text for rec in records]
        feats = config.features
        vectorizer = fit_union(texts, feats.to_union_spec(), min_df=feats.min_df, max_df=feats.max_df)
        X = transform_many(vectorizer, texts)
    else:
        if embeddings is None:
            raise DataError("config scores precomputed embeddings; pass an embedding table")
        X = matrix_for_records(embeddings, list(records))
        if config.features.normalize:
            X = l2_normalize_rows(X)

    if config.train.classifier == "linear_svc":
        counts = np.bincount(y, minlength=len(labels))
        class_weights = compute_class_weights(counts, config.train.class_weight_mode)
        model = train_linear_svc(X, y, config.train, class_weights, labels, n_jobs=n_jobs)
    else:
        model = train_logreg(X, y, config.train, labels)
    return ModelBundle(config=config, model=model, labels=labels, vectorizer=vectorizer)


def features_for_records(
    bundle: ModelBundle,
    records: Sequence[Record],
    embeddings: EmbeddingTable | None = None,
):
    """Feature matrix for new records under the bundle's fitted features."""
    if bundle.vectorizer is not None:
        return transform_many(bundle.vectorizer, [rec.text for rec in records])
    if embeddings is None:
        raise DataError("this model scores precomputed embeddings; pass an embedding table")
    X = matrix_for_records(embeddings, list(records))
    if bundle.config.features.normalize:  # type: ignore[union-attr]
        X = l2_normalize_rows(X)
    return X


def evaluate_bundle(
    bundle: ModelBundle,
    records: Sequence[Record],
    embeddings: EmbeddingTable | None = None,
) -> EvalReport:
    """Score labeled records; unseen gold labels become always-wrong classes."""
    if not records:
        raise DataError("no records to evaluate")
    gold = _labeled(records, "evaluation")
    extended = list(bundle.labels.labels)
    known = set(extended)
    unseen = []
    for lab in gold:
        if lab not in known:
            known.add(lab)
            extended.append(lab)
            unseen.append(lab)
    if unseen:
        warnings.warn(
            f"{len(unseen)} gold label(s) absent from training are scored as "
            f"always-wrong (first: {unseen[0]!r})",
            RuntimeWarning,
        )
    ids = {lab: i for i, lab in enumerate(extended)}
    gold_ids = np.fromiter((ids[lab] for lab in gold), dtype=np.int64, count=len(gold))
    X = features_for_records(bundle, records, embeddings)
    pred = predict_ids(bundle.model, X)
    return evaluate_ids(gold_ids, pred, tuple(extended))


def run_experiment(
    config: ExperimentConfig,
    corpus: Corpus,
    train_split: str = "train",
    eval_split: str = "dev",
    embeddings: EmbeddingTable | None = None,
    n_jobs: int = 1,
) -> tuple[EvalReport, ModelBundle]:
    bundle = train_model(config, corpus, train_split, embeddings, n_jobs=n_jobs)
    report = evaluate_bundle(bundle, corpus.view(eval_split), embeddings)
    return report, bundle


@dataclass(frozen=True)
class GridResult:
    index: int
    config: ExperimentConfig
    micro_f1: float | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _load_done(path: str) -> dict[str, dict]:
    done: dict[str, dict] = {}
    if not os.path.exists(path):
        return done
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
                done[row["key"]] = row
            except (json.JSONDecodeError, KeyError) as exc:
                raise DataError(f"{path}:{lineno}: malformed grid result line: {exc}") from exc
    return done


def grid_search(
    grid: GridSpec,
    corpus: Corpus,
    train_split: str = "train",
    eval_split: str = "dev",
    embeddings: EmbeddingTable | None = None,
    results_path: str | None = None,
    n_jobs: int = 1,
    progress: Callable[[GridResult], None] | None = None,
) -> list[GridResult]:
    """Run every grid combination once; failures are recorded, not fatal.

    Returns successful results sorted by micro-F1 descending; ties keep
    enumeration order.  With ``results_path``, finished combinations are
    appended as JSON lines and skipped on rerun.
    """
    configs = grid.enumerate()
    done = _load_done(results_path) if results_path else {}
    sink = open(results_path, "a", encoding="utf-8") if results_path else None
    results: list[GridResult] = []
    try:
        for i, config in enumerate(configs):
            key = config_key(config)
            if key in done:
                row = done[key]
                results.append(GridResult(i, config, row.get("micro_f1"), row.get("error")))
                continue
            micro: float | None = None
            error: str | None = None
            try:
                report, _ = run_experiment(
                    config, corpus, train_split, eval_split, embeddings, n_jobs=n_jobs
                )
                micro = report.micro_f1
            except (ArbIntentError, ValueError) as exc:
                error = f"{type(exc).__name__}: {exc}"
            result = GridResult(i, config, micro, error)
            results.append(result)
            if sink is not None:
                row = {
                    "index": i,
                    "key": key,
                    "config": config_to_dict(config),
                    "micro_f1": micro,
                    "error": error,
                }
                sink.write(json.dumps(row, sort_keys=True) + "\n")
                sink.flush()
            if progress is not None:
                progress(result)
    finally:
        if sink is not None:
            sink.close()
    ranked = [r for r in results if r.ok and r.micro_f1 is not None]
    ranked.sort(key=lambda r: -r.micro_f1)
    failed = [r for r in results if not r.ok]
    return ranked + failed
