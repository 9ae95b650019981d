"""Unit tests for the SVM and logistic regression trainers."""

import numpy as np
import pytest
import scipy.sparse as sp

from arbintent.corpus import LabelIndex
from arbintent.errors import DataError, NumericError
from arbintent.linear_models import (
    TrainConfig,
    binary_logistic_objective,
    compute_class_weights,
    decision_function,
    decision_matrix,
    predict,
    predict_ids,
    softmax_objective,
    train_linear_svc,
    train_logreg,
)
from arbintent.vectorizer import SparseVector


def _blobs(n_per_class=20, n_classes=3, dim=6, seed=0, spread=0.25):
    """Well-separated Gaussian blobs, one center per class."""
    rng = np.random.default_rng(seed)
    centers = np.eye(n_classes, dim) * 4.0
    X = np.vstack(
        [centers[c] + spread * rng.standard_normal((n_per_class, dim)) for c in range(n_classes)]
    )
    y = np.repeat(np.arange(n_classes), n_per_class)
    return X, y


def _labels(k):
    return LabelIndex([f"intent_{c}" for c in range(k)])


def test_train_config_validation():
    with pytest.raises(ValueError):
        TrainConfig(classifier="boosting")
    with pytest.raises(ValueError):
        TrainConfig(C=0.0)
    with pytest.raises(ValueError):
        TrainConfig(class_weight_mode="magic")
    with pytest.raises(ValueError):
        TrainConfig(max_epochs=0)


def test_compute_class_weights():
    np.testing.assert_array_equal(compute_class_weights([3, 1], "uniform"), [1.0, 1.0])
    balanced = compute_class_weights([3, 1], "balanced")
    np.testing.assert_allclose(balanced, [4.0 / 6.0, 2.0], rtol=1e-12)
    # weighted sample total is preserved
    assert float(np.dot(balanced, [3, 1])) == pytest.approx(4.0)


def test_svc_separates_blobs_perfectly():
    X, y = _blobs()
    labels = _labels(3)
    config = TrainConfig()
    model = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), labels)
    np.testing.assert_array_equal(predict_ids(model, X), y)
    assert model.diagnostics["converged"]


def test_svc_dual_objective_is_non_decreasing():
    X, y = _blobs(spread=1.5, seed=3)  # overlap forces real work
    model = train_linear_svc(
        sp.csr_matrix(X), y, TrainConfig(C=2.0), np.ones(3), _labels(3)
    )
    for history in model.diagnostics["dual_objective"]:
        diffs = np.diff(np.asarray(history))
        assert (diffs >= -1e-10).all()


def test_svc_threaded_training_is_bit_identical():
    X, y = _blobs(seed=5)
    config = TrainConfig()
    a = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), _labels(3), n_jobs=1)
    b = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), _labels(3), n_jobs=3)
    assert np.array_equal(a.weights, b.weights)
    assert np.array_equal(a.bias, b.bias)


def test_svc_rows_permute_with_class_relabeling():
    # same seed in every subproblem: renaming classes permutes rows bitwise
    X, y = _blobs(seed=7)
    perm = np.array([2, 0, 1])
    config = TrainConfig()
    base = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), _labels(3))
    moved = train_linear_svc(sp.csr_matrix(X), perm[y], config, np.ones(3), _labels(3))
    for c in range(3):
        assert np.array_equal(base.weights[c], moved.weights[perm[c]])
        assert base.bias[c] == moved.bias[perm[c]]


def test_svc_input_validation():
    X, y = _blobs()
    labels = _labels(3)
    config = TrainConfig()
    with pytest.raises(ValueError):
        train_linear_svc(sp.csr_matrix(X), y, config, np.ones(2), labels)
    with pytest.raises(DataError):
        train_linear_svc(sp.csr_matrix(X), y[:-1], config, np.ones(3), labels)
    with pytest.raises(DataError):
        train_linear_svc(sp.csr_matrix(X), np.zeros_like(y), config, np.ones(3), labels)
    bad = X.copy()
    bad[0, 0] = np.nan
    with pytest.raises(NumericError):
        train_linear_svc(sp.csr_matrix(bad), y, config, np.ones(3), labels)


def test_svc_warns_when_epochs_run_out():
    X, y = _blobs(spread=2.0, seed=11)
    config = TrainConfig(max_epochs=1, tol=1e-12)
    with pytest.warns(RuntimeWarning, match="max_epochs"):
        model = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), _labels(3))
    assert not model.diagnostics["converged"]


def _finite_difference(fun, x0, args, step=1e-5):
    grad = np.empty_like(x0)
    for i in range(x0.size):
        left = x0.copy()
        right = x0.copy()
        left[i] -= step
        right[i] += step
        grad[i] = (fun(right, *args)[0] - fun(left, *args)[0]) / (2 * step)
    return grad


@pytest.mark.parametrize("point_seed", [0, 1, 2, 3, 4])
def test_softmax_gradient_matches_finite_differences(point_seed):
    X, y = _blobs(n_per_class=8, n_classes=3, dim=4, seed=1)
    rng = np.random.default_rng(point_seed)
    params = 0.5 * rng.standard_normal(3 * (4 + 1))
    args = (sp.csr_matrix(X), y, 3, 0.5)
    _, grad = softmax_objective(params, *args)
    approx = _finite_difference(softmax_objective, params, args)
    np.testing.assert_allclose(grad, approx, rtol=1e-4, atol=1e-7)


def test_binary_logistic_gradient_matches_finite_differences():
    X, y = _blobs(n_per_class=10, n_classes=2, dim=4, seed=2)
    t = np.where(y == 1, 1.0, -1.0)
    rng = np.random.default_rng(9)
    params = 0.5 * rng.standard_normal(5)
    args = (X, t, 0.25)
    _, grad = binary_logistic_objective(params, *args)
    approx = _finite_difference(binary_logistic_objective, params, args)
    np.testing.assert_allclose(grad, approx, rtol=1e-4, atol=1e-7)


@pytest.mark.parametrize("multi_class", ["multinomial", "ovr"])
def test_logreg_separates_blobs(multi_class):
    X, y = _blobs()
    config = TrainConfig(classifier="logistic_regression", multi_class=multi_class)
    model = train_logreg(X, y, config, _labels(3))
    np.testing.assert_array_equal(predict_ids(model, X), y)
    assert model.diagnostics["converged"]


def test_logreg_regularization_shrinks_weights():
    X, y = _blobs()
    labels = _labels(3)
    loose = train_logreg(X, y, TrainConfig(classifier="logistic_regression", C=100.0), labels)
    tight = train_logreg(X, y, TrainConfig(classifier="logistic_regression", C=0.01), labels)
    assert np.linalg.norm(tight.weights) < np.linalg.norm(loose.weights)


def test_decision_function_sparse_and_dense_agree():
    X, y = _blobs()
    model = train_linear_svc(sp.csr_matrix(X), y, TrainConfig(), np.ones(3), _labels(3))
    row = X[4]
    idx = np.arange(row.size, dtype=np.int64)
    as_sparse = SparseVector(idx, row.astype(np.float64), row.size)
    np.testing.assert_allclose(
        decision_function(model, as_sparse), decision_function(model, row), rtol=1e-12
    )
    scores = decision_matrix(model, sp.csr_matrix(X))
    np.testing.assert_allclose(scores[4], decision_function(model, row), rtol=1e-12)


def test_decision_function_rejects_wrong_width():
    X, y = _blobs()
    model = train_linear_svc(sp.csr_matrix(X), y, TrainConfig(), np.ones(3), _labels(3))
    with pytest.raises(DataError):
        decision_function(model, np.zeros(X.shape[1] + 1))


def test_predict_breaks_ties_toward_lowest_class_id():
    labels = _labels(2)
    from arbintent.linear_models import LinearModel

    model = LinearModel(
        weights=np.zeros((2, 3)),
        bias=np.zeros(2),
        labels=labels,
        provenance=TrainConfig(),
    )
    assert predict(model, np.ones(3)) == "intent_0"


def test_svc_duplicated_corpus_keeps_decision_directions():
    # doubling every sample doubles each dual subproblem identically, so the
    # learned directions stay usable: predictions on the originals agree
    X, y = _blobs(seed=13)
    labels = _labels(3)
    config = TrainConfig()
    base = train_linear_svc(sp.csr_matrix(X), y, config, np.ones(3), labels)
    doubled = train_linear_svc(
        sp.csr_matrix(np.vstack([X, X])), np.concatenate([y, y]), config, np.ones(3), labels
    )
    np.testing.assert_array_equal(predict_ids(base, X), predict_ids(doubled, X))
