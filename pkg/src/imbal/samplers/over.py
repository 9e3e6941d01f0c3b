"""Oversamplers: raise every smaller class to the majority count.

SMOTE-family rows are convex combinations ``seed + lam * (neighbor - seed)``
with lam drawn uniformly from [0, 1); the svm variant extrapolates along
the outward ray ``seed - lam * (neighbor - seed)`` for seeds whose
neighborhood is mostly same-class.  One generator per call, consumed in a
fixed row order, makes every synthetic row reproducible.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..errors import InvalidArgumentError
from ..learners.knn import knn_query
from ..learners.svm import fit_linear_svm
from ..seeding import derive_seed, rng_from
from .base import (
    ResampleResult,
    SamplerParams,
    build_result,
    largest_remainder,
    minority_majority,
)

__all__ = ["random_oversample", "smote_family", "SMOTE_VARIANTS"]

SMOTE_VARIANTS = ("classic", "borderline", "svm", "adasyn")


def random_oversample(ds: Dataset, seed: int) -> ResampleResult:
    """Duplicate uniformly drawn rows of each smaller class up to balance."""
    _, majority, counts = minority_majority(ds)
    target = int(counts[majority])
    rng = rng_from(seed, "ros")
    synth_X: list[np.ndarray] = []
    synth_y: list[np.ndarray] = []
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        gap = target - idx.size
        if c == majority or idx.size == 0 or gap <= 0:
            continue
        draws = rng.choice(idx, size=gap, replace=True)
        synth_X.append(ds.features[draws])
        synth_y.append(np.full(gap, c, dtype=np.int64))
    return build_result(
        ds,
        np.arange(ds.n_samples, dtype=np.int64),
        np.vstack(synth_X) if synth_X else None,
        np.concatenate(synth_y) if synth_y else None,
    )


def _require_class_size(count: int, k: int, cls: int, variant: str) -> None:
    if count <= k:
        raise InvalidArgumentError(
            f"smote[{variant}]: class {cls} has {count} rows, needs more than "
            f"k={k} for same-class neighbors"
        )


def _interpolate(
    rng: np.random.Generator,
    rows: np.ndarray,
    seeds: np.ndarray,
    nn_table: np.ndarray,
    count: int,
) -> np.ndarray:
    """Draw ``count`` rows: uniform seed, uniform neighbor, lam in [0, 1)."""
    out = np.empty((count, rows.shape[1]))
    k = nn_table.shape[1]
    for s in range(count):
        a = int(seeds[rng.integers(seeds.size)])
        b = int(nn_table[a, rng.integers(k)])
        lam = rng.random()
        out[s] = rows[a] + lam * (rows[b] - rows[a])
    return out


def _knn_all_but_self(
    X_all: np.ndarray, class_idx: np.ndarray, m: int
) -> np.ndarray:
    """m nearest all-class neighbors for each class row, self excluded.

    Queries m+1 and strips each row's own index (a zero-distance duplicate
    may outrank it, so the strip searches the whole row).
    """
    nn, _ = knn_query(X_all, X_all[class_idx], m + 1)
    out = np.empty((class_idx.size, m), dtype=np.int64)
    for a in range(class_idx.size):
        row = nn[a]
        hits = np.flatnonzero(row == class_idx[a])
        drop = int(hits[0]) if hits.size else m
        out[a] = np.delete(row, drop)
    return out


def smote_family(
    ds: Dataset,
    variant: str,
    params: SamplerParams = SamplerParams(),
    seed: int = 0,
) -> ResampleResult:
    """SMOTE and its borderline / svm / adasyn refinements.

    Every class below the majority count is raised to it exactly.  Classes
    are processed in ascending id with one shared generator.
    """
    if variant not in SMOTE_VARIANTS:
        raise InvalidArgumentError(f"unknown smote variant {variant!r}")
    _, majority, counts = minority_majority(ds)
    target = int(counts[majority])
    rng = rng_from(seed, "smote", variant)
    synth_X: list[np.ndarray] = []
    synth_y: list[np.ndarray] = []
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        gap = target - idx.size
        if c == majority or idx.size == 0 or gap <= 0:
            continue
        rows = ds.features[idx]
        if variant == "adasyn":
            k = params.n_neighbors
        else:
            k = params.k_neighbors
        _require_class_size(idx.size, k, c, variant)
        nn_same, _ = knn_query(rows, rows, k, exclude_self=True)

        if variant == "classic":
            seeds = np.arange(idx.size)
            new_rows = _interpolate(rng, rows, seeds, nn_same, gap)

        elif variant == "borderline":
            m = min(params.m_neighbors, ds.n_samples - 1)
            nn_all = _knn_all_but_self(ds.features, idx, m)
            other = ds.labels[nn_all] != c
            r = other.sum(axis=1)
            danger = np.flatnonzero((r >= m / 2.0) & (r < m))
            seeds = danger if danger.size else np.arange(idx.size)
            new_rows = _interpolate(rng, rows, seeds, nn_same, gap)

        elif variant == "svm":
            y_sign = np.where(ds.labels == c, 1.0, -1.0)
            svm = fit_linear_svm(
                ds.features, y_sign, seed=derive_seed(seed, "svmsmote", c)
            )
            support = np.intersect1d(svm.support_indices(ds.features), idx)
            pool = np.searchsorted(idx, support) if support.size else np.arange(idx.size)
            m = min(params.m_neighbors, ds.n_samples - 1)
            nn_all = _knn_all_but_self(ds.features, idx, m)
            same_frac = (ds.labels[nn_all] == c).sum(axis=1)
            new_rows = np.empty((gap, rows.shape[1]))
            for s in range(gap):
                a = int(pool[rng.integers(pool.size)])
                b = int(nn_same[a, rng.integers(k)])
                lam = rng.random()
                if same_frac[a] > m / 2.0:
                    new_rows[s] = rows[a] - lam * (rows[b] - rows[a])
                else:
                    new_rows[s] = rows[a] + lam * (rows[b] - rows[a])

        else:  # adasyn
            m = min(params.n_neighbors, ds.n_samples - 1)
            nn_all = _knn_all_but_self(ds.features, idx, m)
            r = (ds.labels[nn_all] != c).sum(axis=1).astype(np.float64)
            weights = r if r.sum() > 0 else np.ones(idx.size)
            budgets = largest_remainder(weights, gap)
            new_rows = np.empty((gap, rows.shape[1]))
            s = 0
            for a in range(idx.size):
                for _ in range(int(budgets[a])):
                    b = int(nn_same[a, rng.integers(k)])
                    lam = rng.random()
                    new_rows[s] = rows[a] + lam * (rows[b] - rows[a])
                    s += 1

        synth_X.append(new_rows)
        synth_y.append(np.full(gap, c, dtype=np.int64))

    return build_result(
        ds,
        np.arange(ds.n_samples, dtype=np.int64),
        np.vstack(synth_X) if synth_X else None,
        np.concatenate(synth_y) if synth_y else None,
    )
