"""Linear SVM trained by budgeted Pegasos subgradient steps.

Binary labels in {-1, +1}; the bias is learned as an extra always-one
feature.  Runs exactly ``rounds * n`` update steps with a private seeded
generator, so fits are deterministic.  The support set is the margin band
|w.x + b| <= 1 + tau with tau = 0.1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..seeding import rng_from

__all__ = ["LinearSVM", "fit_linear_svm", "SUPPORT_TAU"]

SUPPORT_TAU = 0.1


@dataclass(frozen=True)
class LinearSVM:
    weights: np.ndarray
    bias: float

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.weights + self.bias

    def support_indices(self, X: np.ndarray) -> np.ndarray:
        """Rows inside the margin band |w.x + b| <= 1 + tau."""
        return np.flatnonzero(np.abs(self.decision_function(X)) <= 1.0 + SUPPORT_TAU)


def fit_linear_svm(
    X: np.ndarray,
    y_sign: np.ndarray,
    seed: int,
    rounds: int = 10,
    reg: float = 1e-2,
) -> LinearSVM:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y_sign, dtype=np.float64)
    n, d = X.shape
    if not np.isin(y, (-1.0, 1.0)).all():
        raise InvalidArgumentError("labels must be -1 or +1")
    if rounds < 1 or reg <= 0:
        raise InvalidArgumentError("rounds must be >= 1 and reg > 0")
    rng = rng_from(seed, "pegasos")
    w = np.zeros(d + 1)
    Xb = np.hstack([X, np.ones((n, 1))])
    steps = rounds * n
    picks = rng.integers(n, size=steps)
    for t in range(1, steps + 1):
        i = picks[t - 1]
        eta = 1.0 / (reg * t)
        margin = y[i] * (Xb[i] @ w)
        w *= 1.0 - eta * reg
        if margin < 1.0:
            w += eta * y[i] * Xb[i]
    return LinearSVM(weights=w[:-1].copy(), bias=float(w[-1]))
