"""Balanced bagging variants over weighted trees.

Undersample bagging draws ceil(max_samples * minority count) rows per class
per member, without replacement; the balanced random forest does the same
with replacement and passes max_features down to its trees.  Oversample
bagging bootstraps ceil(max_samples * class count) rows per class and then
balances the view up to its majority count by duplication (overbagging) or
interpolation (smotebagging).  All members combine by mean probability.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset, class_distribution
from ..errors import InvalidArgumentError
from ..learners.knn import knn_query
from ..learners.tree import DecisionTree, TreeParams, fit_tree
from ..seeding import derive_seed, rng_from
from .base import EnsembleParams, TrainedEnsemble

__all__ = [
    "fit_underbagging",
    "fit_balanced_forest",
    "fit_overbagging",
    "fit_smotebagging",
]


def _member_tree(
    X: np.ndarray, y: np.ndarray, K: int, max_features: float, seed: int
) -> DecisionTree:
    return fit_tree(
        X,
        y,
        params=TreeParams(max_features=max_features, seed=seed),
        n_classes=K,
    )


def _fit_under_bag(
    ds: Dataset, params: EnsembleParams, seed: int, replacement: bool
) -> TrainedEnsemble:
    dist = class_distribution(ds)
    per_class = max(1, int(np.ceil(params.max_samples * dist.minority_count)))
    members = []
    for t in range(params.n_estimators):
        rng = rng_from(seed, "underbag", t)
        picks = []
        for c in range(ds.n_classes):
            idx = np.flatnonzero(ds.labels == c)
            if idx.size == 0:
                continue
            take = min(per_class, idx.size) if not replacement else per_class
            picks.append(np.sort(rng.choice(idx, size=take, replace=replacement)))
        view = np.concatenate(picks)
        members.append(
            _member_tree(
                ds.features[view],
                ds.labels[view],
                ds.n_classes,
                params.max_features,
                derive_seed(seed, "tree", t),
            )
        )
    return TrainedEnsemble(n_classes=ds.n_classes, kind="mean", members=tuple(members))


def fit_underbagging(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    """Per-member balanced subsets drawn without replacement."""
    return _fit_under_bag(ds, params, seed, replacement=False)


def fit_balanced_forest(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    """Balanced random forest: balanced bootstrap plus feature subsampling."""
    return _fit_under_bag(ds, params, seed, replacement=True)


def _balance_view_up(
    X: np.ndarray,
    y: np.ndarray,
    K: int,
    rng: np.random.Generator,
    smote_k: int | None,
) -> tuple[np.ndarray, np.ndarray]:
    """Raise every class in the view to the view majority count.

    smote_k None duplicates rows; otherwise rows interpolate toward
    same-class neighbors with k clamped to class size - 1, falling back to
    duplication for singleton classes.
    """
    counts = np.bincount(y, minlength=K)
    target = int(counts.max())
    chunks_X = [X]
    chunks_y = [y]
    for c in range(K):
        idx = np.flatnonzero(y == c)
        gap = target - idx.size
        if idx.size == 0 or gap <= 0:
            continue
        if smote_k is None or idx.size < 2:
            draws = rng.choice(idx, size=gap, replace=True)
            chunks_X.append(X[draws])
            chunks_y.append(np.full(gap, c, dtype=np.int64))
        else:
            k = min(smote_k, idx.size - 1)
            rows = X[idx]
            nn, _ = knn_query(rows, rows, k, exclude_self=True)
            new_rows = np.empty((gap, X.shape[1]))
            for s in range(gap):
                a = int(rng.integers(idx.size))
                b = int(nn[a, rng.integers(k)])
                lam = rng.random()
                new_rows[s] = rows[a] + lam * (rows[b] - rows[a])
            chunks_X.append(new_rows)
            chunks_y.append(np.full(gap, c, dtype=np.int64))
    return np.vstack(chunks_X), np.concatenate(chunks_y)


def _fit_over_bag(
    ds: Dataset, params: EnsembleParams, seed: int, smote: bool
) -> TrainedEnsemble:
    members = []
    for t in range(params.n_estimators):
        rng = rng_from(seed, "overbag", t)
        picks = []
        for c in range(ds.n_classes):
            idx = np.flatnonzero(ds.labels == c)
            if idx.size == 0:
                continue
            take = max(1, int(np.ceil(params.max_samples * idx.size)))
            picks.append(np.sort(rng.choice(idx, size=take, replace=True)))
        view = np.concatenate(picks)
        Xv, yv = _balance_view_up(
            ds.features[view],
            ds.labels[view],
            ds.n_classes,
            rng,
            params.k_neighbors if smote else None,
        )
        members.append(
            _member_tree(
                Xv, yv, ds.n_classes, params.max_features, derive_seed(seed, "tree", t)
            )
        )
    return TrainedEnsemble(n_classes=ds.n_classes, kind="mean", members=tuple(members))


def fit_overbagging(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    """Per-class bootstrap, then duplicate smaller classes up to balance."""
    return _fit_over_bag(ds, params, seed, smote=False)


def fit_smotebagging(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    """Per-class bootstrap, then interpolate smaller classes up to balance."""
    return _fit_over_bag(ds, params, seed, smote=True)
