"""Dual coordinate descent for the L2-regularized squared-hinge binary SVM.

Solves, for labels s in {-1, +1} and per-sample costs C_i:

    min_w  (1/2)||w||^2 + sum_i C_i * max(0, 1 - s_i * (w . x_i + b))^2

via its dual ``min_a (1/2) a'(Q + D)a - e'a`` with ``D_ii = 1/(2 C_i)`` and
``a_i >= 0``.  The intercept is an implicit augmented constant-1.0 feature.
One epoch visits every sample once in a seeded random permutation; the
stopping rule is the per-epoch maximum absolute projected gradient.

The kernel is jitted with numba and releases the GIL, so independent
one-vs-rest subproblems can run on threads with bit-identical results.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MULT = np.uint64(0x2545F4914F6CDD1D)
_SEED_MIX = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True, nogil=True)
def _dual_cd_squared_hinge(data, indices, indptr, signs, cost, dim, tol, max_epochs, seed):
    n = signs.shape[0]
    w = np.zeros(dim + 1)
    alpha = np.zeros(n)
    dii = np.empty(n)
    qdiag = np.empty(n)
    for i in range(n):
        dii[i] = 0.5 / cost[i]
        acc = 1.0 + dii[i]  # the constant intercept feature plus D_ii
        for k in range(indptr[i], indptr[i + 1]):
            acc += data[k] * data[k]
        qdiag[i] = acc

    order = np.arange(n)
    state = np.uint64(seed) ^ _SEED_MIX
    if state == np.uint64(0):
        state = _SEED_MIX

    history = np.empty(max_epochs)
    epochs = 0
    violation = np.inf
    for ep in range(max_epochs):
        # Fisher-Yates with an xorshift64* stream: deterministic per seed.
        for t in range(n - 1, 0, -1):
            state ^= state >> np.uint64(12)
            state ^= state << np.uint64(25)
            state ^= state >> np.uint64(27)
            j = int((state * _MULT) % np.uint64(t + 1))
            tmp = order[t]
            order[t] = order[j]
            order[j] = tmp

        max_viol = 0.0
        for t in range(n):
            i = order[t]
            dot = w[dim]
            for k in range(indptr[i], indptr[i + 1]):
                dot += data[k] * w[indices[k]]
            g = signs[i] * dot - 1.0 + alpha[i] * dii[i]
            if alpha[i] == 0.0:
                pg = g if g < 0.0 else 0.0
            else:
                pg = g
            apg = -pg if pg < 0.0 else pg
            if apg > max_viol:
                max_viol = apg
            if apg > 1e-12:
                new_alpha = alpha[i] - g / qdiag[i]
                if new_alpha < 0.0:
                    new_alpha = 0.0
                step = (new_alpha - alpha[i]) * signs[i]
                if step != 0.0:
                    alpha[i] = new_alpha
                    w[dim] += step
                    for k in range(indptr[i], indptr[i + 1]):
                        w[indices[k]] += step * data[k]

        # Dual objective in maximization form: e'a - (1/2)(||w||^2 + a'Da).
        wsq = 0.0
        for j in range(dim + 1):
            wsq += w[j] * w[j]
        asum = 0.0
        apen = 0.0
        for i in range(n):
            asum += alpha[i]
            apen += dii[i] * alpha[i] * alpha[i]
        history[ep] = asum - 0.5 * (wsq + apen)

        epochs = ep + 1
        violation = max_viol
        if max_viol < tol:
            break

    return w, alpha, history[:epochs].copy(), epochs, violation


def solve_binary_svc(X_csr, signs, cost, tol, max_epochs, seed):
    """Run the dual CD kernel; returns (w, bias, alpha, objective_history, epochs, violation).

    ``X_csr`` must be float64 CSR with int64 index arrays; ``signs`` is a
    float64 vector of +/-1 and ``cost`` the positive per-sample penalty.
    """
    w_aug, alpha, history, epochs, violation = _dual_cd_squared_hinge(
        X_csr.data,
        X_csr.indices,
        X_csr.indptr,
        signs,
        cost,
        X_csr.shape[1],
        tol,
        max_epochs,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
    )
    return w_aug[:-1], float(w_aug[-1]), alpha, history, epochs, violation
