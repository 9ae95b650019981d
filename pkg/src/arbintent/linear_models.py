"""Linear classifiers: one-vs-rest squared-hinge SVM and logistic regression.

The SVM path mirrors the classic liblinear setup: squared hinge, L2 penalty,
dual coordinate descent, intercept through an augmented constant feature.
Logistic regression minimizes multinomial (or per-class one-vs-rest)
cross-entropy with an L2 penalty of strength ``1/(2C)`` on the weights only;
the descent itself is delegated to L-BFGS-B over the analytic gradient.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize

from .corpus import LabelIndex
from .errors import DataError, NumericError
from .solver import solve_binary_svc
from .vectorizer import SparseVector

CLASSIFIER_KINDS = ("linear_svc", "logistic_regression")
CLASS_WEIGHT_MODES = ("uniform", "balanced")
MULTI_CLASS_MODES = ("multinomial", "ovr")


@dataclass(frozen=True)
class TrainConfig:
    classifier: str = "linear_svc"
    C: float = 1.0
    class_weight_mode: str = "uniform"
    tol: float = 1e-4
    max_epochs: int = 1000
    seed: int = 42
    multi_class: str = "multinomial"  # logistic regression only

    def __post_init__(self) -> None:
        if self.classifier not in CLASSIFIER_KINDS:
            raise ValueError(f"unknown classifier {self.classifier!r}")
        if self.class_weight_mode not in CLASS_WEIGHT_MODES:
            raise ValueError(f"unknown class_weight_mode {self.class_weight_mode!r}")
        if self.multi_class not in MULTI_CLASS_MODES:
            raise ValueError(f"unknown multi_class {self.multi_class!r}")
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")


@dataclass
class LinearModel:
    weights: np.ndarray  # (K, D)
    bias: np.ndarray  # (K,)
    labels: LabelIndex
    provenance: TrainConfig
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def n_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]


def compute_class_weights(class_counts: Sequence[int], mode: str) -> np.ndarray:
    """Per-class penalty multipliers: all ones, or n / (K * count)."""
    counts = np.asarray(class_counts, dtype=np.float64)
    if mode == "uniform":
        return np.ones_like(counts)
    if mode != "balanced":
        raise ValueError(f"unknown class weight mode {mode!r}")
    if np.any(counts < 1):
        bad = int(np.argmin(counts))
        raise DataError(f"class {bad} has zero training samples; balanced weights undefined")
    n = counts.sum()
    k = counts.shape[0]
    return n / (k * counts)


def _as_csr64(X) -> sp.csr_matrix:
    if isinstance(X, SparseVector):
        raise TypeError("expected a matrix, got a single SparseVector")
    mat = X if sp.issparse(X) else sp.csr_matrix(np.atleast_2d(np.asarray(X, dtype=np.float64)))
    mat = mat.tocsr().astype(np.float64)
    return sp.csr_matrix(
        (mat.data, mat.indices.astype(np.int64), mat.indptr.astype(np.int64)), shape=mat.shape
    )


def _check_training_inputs(X, y: np.ndarray, n_classes: int) -> None:
    if X.shape[0] != y.shape[0]:
        raise DataError(f"feature rows ({X.shape[0]}) do not align with labels ({y.shape[0]})")
    data = X.data if sp.issparse(X) else np.asarray(X)
    if not np.all(np.isfinite(data)):
        raise NumericError("training features contain non-finite values")
    if np.unique(y).size < 2:
        raise DataError("training data contains a single class; need at least 2")
    if y.min() < 0 or y.max() >= n_classes:
        raise DataError(f"class id outside [0, {n_classes}) in training labels")


def train_linear_svc(
    X,
    y: np.ndarray,
    config: TrainConfig,
    weights: np.ndarray,
    labels: LabelIndex,
    n_jobs: int = 1,
) -> LinearModel:
    """One squared-hinge subproblem per class, labels +1/-1, argmax decision.

    Sample i carries cost ``C * weights[y_i]`` in every subproblem.  Each
    subproblem uses the same seed, so the trained rows depend only on the
    data and the class membership pattern, never on the class id; training
    the subproblems on threads is bit-identical to sequential training.
    """
    k = len(labels)
    if len(weights) != k:
        raise ValueError(f"got {len(weights)} class weights for {k} classes")
    y = np.asarray(y, dtype=np.int64)
    Xc = _as_csr64(X)
    _check_training_inputs(Xc, y, k)

    cost = config.C * np.asarray(weights, dtype=np.float64)[y]
    W = np.zeros((k, Xc.shape[1]))
    b = np.zeros(k)
    histories: list[np.ndarray] = [np.empty(0)] * k
    epochs = np.zeros(k, dtype=np.int64)
    violations = np.zeros(k)

    def _solve(c: int):
        signs = np.where(y == c, 1.0, -1.0)
        return solve_binary_svc(Xc, signs, cost, config.tol, config.max_epochs, config.seed)

    if n_jobs == 1:
        results = [_solve(c) for c in range(k)]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs if n_jobs > 0 else None) as pool:
            results = list(pool.map(_solve, range(k)))
    for c, (w_c, b_c, _alpha, hist, ep, viol) in enumerate(results):
        W[c] = w_c
        b[c] = b_c
        histories[c] = hist
        epochs[c] = ep
        violations[c] = viol

    converged = bool(np.all(violations < config.tol))
    if not converged:
        worst = int(np.argmax(violations))
        warnings.warn(
            f"svc solver hit max_epochs={config.max_epochs} on class {worst} "
            f"(violation {violations[worst]:.3e} >= tol {config.tol:.1e})",
            RuntimeWarning,
        )
    return LinearModel(
        weights=W,
        bias=b,
        labels=labels,
        provenance=config,
        diagnostics={
            "solver": "dual_cd_squared_hinge",
            "converged": converged,
            "epochs": epochs.tolist(),
            "final_violation": violations.tolist(),
            "dual_objective": histories,
        },
    )


def softmax_objective(params: np.ndarray, X, y: np.ndarray, n_classes: int, inv_c: float):
    """Objective and gradient of penalized multinomial cross-entropy.

    ``params`` is the flattened (K, D) weight matrix followed by K biases.
    The L2 penalty ``inv_c/2 * ||W||^2`` excludes the biases.
    """
    n, d = X.shape
    W = params[: n_classes * d].reshape(n_classes, d)
    bias = params[n_classes * d :]
    scores = X @ W.T + bias
    shift = scores.max(axis=1, keepdims=True)
    exps = np.exp(scores - shift)
    z = exps.sum(axis=1, keepdims=True)
    log_z = np.log(z) + shift
    rows = np.arange(n)
    obj = float(log_z.sum() - scores[rows, y].sum()) + 0.5 * inv_c * float((W * W).sum())
    probs = exps / z
    probs[rows, y] -= 1.0
    grad_w = (X.T @ probs).T + inv_c * W
    grad_b = probs.sum(axis=0)
    return obj, np.concatenate([grad_w.ravel(), grad_b])


def binary_logistic_objective(params: np.ndarray, X, t: np.ndarray, inv_c: float):
    """Objective and gradient for a single +/-1 logistic subproblem."""
    w = params[:-1]
    bias = params[-1]
    z = X @ w + bias
    obj = float(np.logaddexp(0.0, -t * z).sum()) + 0.5 * inv_c * float(np.dot(w, w))
    coef = -t / (1.0 + np.exp(t * z))
    grad_w = X.T @ coef + inv_c * w
    return obj, np.concatenate([grad_w, [coef.sum()]])


def _lbfgs(fun, x0: np.ndarray, args: tuple, tol: float, max_epochs: int):
    return minimize(
        fun,
        x0,
        args=args,
        jac=True,
        method="L-BFGS-B",
        options={"gtol": tol, "ftol": 0.0, "maxiter": max_epochs, "maxfun": max(15000, 50 * max_epochs)},
    )


def train_logreg(X, y: np.ndarray, config: TrainConfig, labels: LabelIndex) -> LinearModel:
    """Multinomial (or one-vs-rest) logistic regression, unweighted samples."""
    k = len(labels)
    y = np.asarray(y, dtype=np.int64)
    Xm = X if not sp.issparse(X) else _as_csr64(X)
    if isinstance(Xm, np.ndarray):
        Xm = np.asarray(Xm, dtype=np.float64)
    _check_training_inputs(Xm, y, k)
    inv_c = 1.0 / config.C
    d = Xm.shape[1]

    if config.multi_class == "multinomial":
        res = _lbfgs(softmax_objective, np.zeros(k * d + k), (Xm, y, k, inv_c), config.tol, config.max_epochs)
        W = res.x[: k * d].reshape(k, d).copy()
        b = res.x[k * d :].copy()
        grad_norm = float(np.max(np.abs(res.jac)))
        converged = bool(res.status == 0)
    else:
        W = np.zeros((k, d))
        b = np.zeros(k)
        grad_norm = 0.0
        converged = True
        for c in range(k):
            t = np.where(y == c, 1.0, -1.0)
            res = _lbfgs(binary_logistic_objective, np.zeros(d + 1), (Xm, t, inv_c), config.tol, config.max_epochs)
            W[c] = res.x[:-1]
            b[c] = res.x[-1]
            grad_norm = max(grad_norm, float(np.max(np.abs(res.jac))))
            converged = converged and res.status == 0

    if not converged:
        warnings.warn(
            f"logistic regression did not converge (final gradient norm {grad_norm:.3e})",
            RuntimeWarning,
        )
    return LinearModel(
        weights=W,
        bias=b,
        labels=labels,
        provenance=config,
        diagnostics={"solver": "lbfgs", "converged": converged, "final_grad_norm": grad_norm},
    )


def decision_function(model: LinearModel, x) -> np.ndarray:
    """Per-class scores ``weights[c] . x + bias[c]`` for a single input."""
    if isinstance(x, SparseVector):
        if x.dim != model.n_features:
            raise DataError(f"input dimension {x.dim} != model dimension {model.n_features}")
        return model.weights[:, x.indices] @ x.values + model.bias
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] != model.n_features:
        raise DataError(f"input dimension {vec.shape} != model dimension {model.n_features}")
    return model.weights @ vec + model.bias


def decision_matrix(model: LinearModel, X) -> np.ndarray:
    """Scores for a batch, one row of K scores per input row."""
    if X.shape[1] != model.n_features:
        raise DataError(f"input dimension {X.shape[1]} != model dimension {model.n_features}")
    return np.asarray(X @ model.weights.T) + model.bias


def predict(model: LinearModel, x) -> str:
    """Label of the argmax score; ties break toward the lowest class id."""
    scores = decision_function(model, x)
    return model.labels.label_of(int(np.argmax(scores)))


def predict_ids(model: LinearModel, X) -> np.ndarray:
    return np.argmax(decision_matrix(model, X), axis=1)
