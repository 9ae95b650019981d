"""Prediction scoring: confusion matrix, micro/macro F1, per-class report.

Micro F1 is computed from the global TP/FP/FN counts; in full-coverage
single-label classification it coincides with accuracy (trace / n).  All
zero-denominator precision/recall/F1 values are 0 by convention and the
affected classes are flagged in the report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class ClassMetrics:
    label: str
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    micro_f1: float
    macro_f1: float
    weighted_f1: float
    per_class: tuple[ClassMetrics, ...]
    confusion: np.ndarray  # rows = gold, columns = predicted
    labels: tuple[str, ...]
    zero_division_classes: tuple[str, ...]

    @property
    def n(self) -> int:
        return int(self.confusion.sum())


def confusion_matrix(gold, pred, n_classes: int) -> np.ndarray:
    """Cell (g, p) counts samples with gold class g predicted as p."""
    gold = np.asarray(gold, dtype=np.int64)
    pred = np.asarray(pred, dtype=np.int64)
    if gold.shape != pred.shape:
        raise DataError(f"gold has {gold.size} entries, predictions have {pred.size}")
    conf = np.zeros((n_classes, n_classes), dtype=np.int64)
    if gold.size == 0:
        return conf
    if gold.min() < 0 or gold.max() >= n_classes or pred.min() < 0 or pred.max() >= n_classes:
        raise DataError(f"class id out of range [0, {n_classes})")
    np.add.at(conf, (gold, pred), 1)
    return conf


def _f1(two_tp: int, fp: int, fn: int) -> float:
    denom = two_tp + fp + fn
    return two_tp / denom if denom else 0.0


def micro_f1(conf: np.ndarray) -> float:
    """F1 over the global TP/FP/FN counts: 2TP / (2TP + FP + FN)."""
    n = int(conf.sum())
    if n == 0:
        raise DataError("empty confusion matrix")
    tp = int(np.trace(conf))
    fp = int(conf.sum(axis=0).sum() - np.trace(conf))
    fn = int(conf.sum(axis=1).sum() - np.trace(conf))
    return _f1(2 * tp, fp, fn)


def per_class_metrics(conf: np.ndarray) -> list[tuple[float, float, float, int]]:
    """(precision, recall, f1, support) per class, zero-division -> 0."""
    tp = np.diag(conf)
    pred_totals = conf.sum(axis=0)
    supports = conf.sum(axis=1)
    out = []
    for c in range(conf.shape[0]):
        p = tp[c] / pred_totals[c] if pred_totals[c] else 0.0
        r = tp[c] / supports[c] if supports[c] else 0.0
        out.append((float(p), float(r), _f1(2 * int(tp[c]), int(pred_totals[c] - tp[c]), int(supports[c] - tp[c])), int(supports[c])))
    return out


def macro_f1(conf: np.ndarray) -> float:
    """Unweighted mean of per-class F1 over all classes."""
    if int(conf.sum()) == 0:
        raise DataError("empty confusion matrix")
    return float(np.mean([f1 for _, _, f1, _ in per_class_metrics(conf)]))


def evaluate_ids(gold, pred, labels: tuple[str, ...] | list[str]) -> EvalReport:
    """Full report for aligned gold/predicted class ids."""
    conf = confusion_matrix(gold, pred, len(labels))
    stats = per_class_metrics(conf)
    per_class = tuple(
        ClassMetrics(label=labels[c], precision=p, recall=r, f1=f, support=s)
        for c, (p, r, f, s) in enumerate(stats)
    )
    supports = np.array([m.support for m in per_class], dtype=np.float64)
    f1s = np.array([m.f1 for m in per_class])
    weighted = float((f1s * supports).sum() / supports.sum()) if supports.sum() else 0.0
    pred_totals = conf.sum(axis=0)
    flagged = tuple(
        labels[c] for c in range(len(labels)) if per_class[c].support == 0 or pred_totals[c] == 0
    )
    return EvalReport(
        micro_f1=micro_f1(conf),
        macro_f1=float(np.mean(f1s)),
        weighted_f1=weighted,
        per_class=per_class,
        confusion=conf,
        labels=tuple(labels),
        zero_division_classes=flagged,
    )


def format_report(report: EvalReport, max_classes: int | None = None) -> str:
    """Human-readable table; percentages shown to 2 decimals."""
    lines = [
        f"samples: {report.n}",
        f"micro F1:    {100 * report.micro_f1:.2f}",
        f"macro F1:    {100 * report.macro_f1:.2f}",
        f"weighted F1: {100 * report.weighted_f1:.2f}",
        "",
        f"{'label':<40} {'prec':>7} {'recall':>7} {'f1':>7} {'support':>8}",
    ]
    rows = report.per_class if max_classes is None else report.per_class[:max_classes]
    for m in rows:
        lines.append(
            f"{m.label:<40} {100 * m.precision:>7.2f} {100 * m.recall:>7.2f} "
            f"{100 * m.f1:>7.2f} {m.support:>8}"
        )
    if max_classes is not None and len(report.per_class) > max_classes:
        lines.append(f"... ({len(report.per_class) - max_classes} more classes)")
    if report.zero_division_classes:
        lines.append("")
        lines.append(
            "zero-division classes (scored 0): " + ", ".join(report.zero_division_classes)
        )
    return "\n".join(lines)


def report_to_dict(report: EvalReport) -> dict:
    """JSON-ready view of the report."""
    return {
        "n": report.n,
        "micro_f1": report.micro_f1,
        "macro_f1": report.macro_f1,
        "weighted_f1": report.weighted_f1,
        "labels": list(report.labels),
        "per_class": [
            {
                "label": m.label,
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
                "support": m.support,
            }
            for m in report.per_class
        ],
        "confusion": report.confusion.tolist(),
        "zero_division_classes": list(report.zero_division_classes),
    }
