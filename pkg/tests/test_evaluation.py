"""Unit tests for confusion-matrix scoring."""

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arbintent.errors import DataError
from arbintent.evaluation import (
    confusion_matrix,
    evaluate_ids,
    format_report,
    macro_f1,
    micro_f1,
    per_class_metrics,
    report_to_dict,
)

LABELS3 = ("alpha", "beta", "gamma")


def test_confusion_matrix_hand_example():
    gold = [0, 0, 1, 2, 2, 2]
    pred = [0, 1, 1, 2, 2, 0]
    conf = confusion_matrix(gold, pred, 3)
    np.testing.assert_array_equal(conf, [[1, 1, 0], [0, 1, 0], [1, 0, 2]])


def test_confusion_matrix_validation():
    with pytest.raises(DataError):
        confusion_matrix([0, 1], [0], 2)
    with pytest.raises(DataError):
        confusion_matrix([0, 3], [0, 0], 2)
    with pytest.raises(DataError):
        confusion_matrix([0, -1], [0, 0], 2)


def test_micro_f1_hand_math():
    conf = confusion_matrix([0, 0, 1, 2, 2, 2], [0, 1, 1, 2, 2, 0], 3)
    # 4 of 6 on the diagonal
    assert micro_f1(conf) == pytest.approx(4 / 6)


def test_per_class_metrics_hand_math():
    conf = confusion_matrix([0, 0, 1, 2, 2, 2], [0, 1, 1, 2, 2, 0], 3)
    stats = per_class_metrics(conf)
    prec0, rec0, f10, sup0 = stats[0]
    assert prec0 == pytest.approx(1 / 2)  # predicted alpha twice, right once
    assert rec0 == pytest.approx(1 / 2)
    assert f10 == pytest.approx(1 / 2)
    assert sup0 == 2
    prec1, rec1, f11, _ = stats[1]
    assert prec1 == pytest.approx(1 / 2)
    assert rec1 == pytest.approx(1.0)
    assert f11 == pytest.approx(2 / 3)


def test_zero_division_convention_and_flags():
    # gamma never appears; beta is never predicted
    report = evaluate_ids([0, 1], [0, 0], LABELS3)
    by_label = {m.label: m for m in report.per_class}
    assert by_label["gamma"].f1 == 0.0
    assert by_label["beta"].precision == 0.0
    assert "gamma" in report.zero_division_classes
    assert "beta" in report.zero_division_classes
    assert "alpha" not in report.zero_division_classes


def test_macro_averages_all_classes_including_zeros():
    conf = confusion_matrix([0, 1], [0, 0], 3)
    per = [f for _, _, f, _ in per_class_metrics(conf)]
    assert macro_f1(conf) == pytest.approx(sum(per) / 3)


def test_weighted_f1_uses_supports():
    report = evaluate_ids([0, 0, 0, 1], [0, 0, 1, 1], ("a", "b"))
    by_label = {m.label: m for m in report.per_class}
    expected = (by_label["a"].f1 * 3 + by_label["b"].f1 * 1) / 4
    assert report.weighted_f1 == pytest.approx(expected)


@given(
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=60)
)
def test_micro_f1_equals_accuracy_exactly(pairs):
    gold = [g for g, _ in pairs]
    pred = [p for _, p in pairs]
    conf = confusion_matrix(gold, pred, 5)
    accuracy = int(np.trace(conf)) / len(pairs)
    assert micro_f1(conf) == accuracy  # bit-exact, both are tp/n


@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=40),
    st.permutations(list(range(4))),
)
def test_micro_f1_is_invariant_under_class_permutation(pairs, perm):
    perm = np.asarray(perm)
    gold = np.array([g for g, _ in pairs])
    pred = np.array([p for _, p in pairs])
    base = micro_f1(confusion_matrix(gold, pred, 4))
    moved = micro_f1(confusion_matrix(perm[gold], perm[pred], 4))
    assert base == moved


def test_report_formatting_and_json():
    report = evaluate_ids([0, 1, 2, 2], [0, 1, 2, 0], LABELS3)
    text = format_report(report)
    assert "micro F1:    75.00" in text
    assert "alpha" in text
    short = format_report(report, max_classes=1)
    assert "more classes" in short
    payload = json.dumps(report_to_dict(report))
    assert json.loads(payload)["n"] == 4


def test_report_counts_and_n():
    report = evaluate_ids([1, 1, 0], [1, 0, 0], ("x", "y"))
    assert report.n == 3
    assert report.confusion.dtype == np.int64
