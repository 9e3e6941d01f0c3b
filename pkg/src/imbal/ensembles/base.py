"""Ensemble containers and cost vectors.

A TrainedEnsemble aggregates fitted trees under one of three combiners:
"mean" averages member probabilities (bagging-style), "vote" normalizes the
alpha-weighted hard votes (discrete boosting), and "samme_r" sums
centered log-probability scores (real boosting).  Nested ensembles average
their sub-ensembles' probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..errors import InvalidArgumentError
from ..learners.tree import DecisionTree

__all__ = ["EnsembleParams", "TrainedEnsemble", "compute_cost_vector", "PROBA_FLOOR"]

PROBA_FLOOR = 1e-12


@dataclass(frozen=True)
class EnsembleParams:
    """Knobs shared across the ensemble family; unused ones are ignored."""

    n_estimators: int = 100
    learning_rate: float = 1.0
    algorithm: Literal["SAMME", "SAMME.R"] = "SAMME"
    max_samples: float = 1.0
    max_features: float = 1.0
    k_neighbors: int = 5
    k_bins: int = 5
    replacement: bool = False

    def __post_init__(self) -> None:
        if self.n_estimators < 1:
            raise InvalidArgumentError("n_estimators must be >= 1")
        if self.learning_rate <= 0:
            raise InvalidArgumentError("learning_rate must be positive")
        if self.algorithm not in ("SAMME", "SAMME.R"):
            raise InvalidArgumentError(f"unknown algorithm {self.algorithm!r}")
        if not 0.0 < self.max_samples <= 1.0:
            raise InvalidArgumentError("max_samples must be in (0, 1]")
        if not 0.0 < self.max_features <= 1.0:
            raise InvalidArgumentError("max_features must be in (0, 1]")
        if not 1 <= self.k_neighbors <= 10:
            raise InvalidArgumentError("k_neighbors must be in 1..10")
        if not 1 <= self.k_bins <= 10:
            raise InvalidArgumentError("k_bins must be in 1..10")


@dataclass(frozen=True)
class TrainedEnsemble:
    """Fitted ensemble; either flat members or nested groups."""

    n_classes: int
    kind: Literal["mean", "vote", "samme_r", "nested"]
    members: tuple[DecisionTree, ...] = ()
    alphas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    groups: tuple["TrainedEnsemble", ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "nested":
            if not self.groups:
                raise InvalidArgumentError("nested ensemble needs groups")
        elif not self.members:
            raise InvalidArgumentError("ensemble needs at least one member")
        if self.kind in ("vote", "samme_r") and len(self.alphas) != len(self.members):
            raise InvalidArgumentError("one alpha per member required")

    @property
    def n_members(self) -> int:
        if self.kind == "nested":
            return sum(g.n_members for g in self.groups)
        return len(self.members)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
        n = X.shape[0]
        K = self.n_classes
        if self.kind == "nested":
            acc = np.zeros((n, K))
            for g in self.groups:
                acc += g.predict_proba(X)
            return acc / len(self.groups)
        if self.kind == "mean":
            acc = np.zeros((n, K))
            for m in self.members:
                acc += m.predict_proba(X)
            return acc / len(self.members)
        if self.kind == "vote":
            scores = np.zeros((n, K))
            rows = np.arange(n)
            for alpha, m in zip(self.alphas, self.members):
                scores[rows, m.predict(X)] += alpha
            total = scores.sum(axis=1, keepdims=True)
            total[total <= 0.0] = 1.0
            return scores / total
        # samme_r: centered log-probability scores
        scores = np.zeros((n, K))
        for m in self.members:
            lp = np.log(np.clip(m.predict_proba(X), PROBA_FLOOR, None))
            scores += (K - 1.0) * (lp - lp.mean(axis=1, keepdims=True))
        z = scores / (K - 1.0)
        z -= z.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1).astype(np.int64)


def compute_cost_vector(counts: np.ndarray) -> np.ndarray:
    """Per-class misclassification costs from training counts.

    c_k = n / (K * count_k), normalized so the largest cost is 1; the cost
    ratio between two classes equals their inverse count ratio.
    """
    c = np.asarray(counts, dtype=np.float64)
    if (c <= 0).any():
        raise InvalidArgumentError("cost vector needs every class present")
    n = c.sum()
    k = c.size
    cost = n / (k * c)
    return cost / cost.max()
