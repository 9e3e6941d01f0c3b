"""Seeded synthetic two-class Gaussian-overlap datasets.

Majority rows are drawn from N(0, I), minority rows from N(mu, I) with mu
placed at a fixed center distance along the all-ones direction, so the
classes overlap and neither is separable.  The minority count is set by
the requested imbalance ratio.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, FeatureKind
from .errors import InvalidArgumentError
from .seeding import rng_from

__all__ = ["make_gaussian_overlap"]

# distance between class means; ~1.8 sigma keeps a substantial overlap
_CENTER_DISTANCE = 1.8


def make_gaussian_overlap(
    n: int = 2000,
    d: int = 10,
    imbalance_ratio: float = 5.0,
    seed: int = 0,
    name: str | None = None,
) -> Dataset:
    """Two overlapping Gaussian classes at the given imbalance ratio."""
    if n < 4 or d < 1:
        raise InvalidArgumentError(f"need n >= 4 and d >= 1, got n={n} d={d}")
    if imbalance_ratio < 1.0:
        raise InvalidArgumentError(
            f"imbalance ratio must be >= 1, got {imbalance_ratio}"
        )
    n_min = max(2, int(round(n / (1.0 + imbalance_ratio))))
    n_maj = n - n_min
    rng = rng_from(seed, "gaussian_overlap", n, d, imbalance_ratio)
    mu = np.full(d, _CENTER_DISTANCE / np.sqrt(d))
    X = np.vstack(
        [
            rng.normal(0.0, 1.0, size=(n_maj, d)),
            rng.normal(0.0, 1.0, size=(n_min, d)) + mu,
        ]
    )
    y = np.concatenate(
        [np.zeros(n_maj, dtype=np.int64), np.ones(n_min, dtype=np.int64)]
    )
    perm = rng.permutation(n)
    label = name or f"gauss-n{n}-d{d}-ir{imbalance_ratio:g}-s{seed}"
    schema = tuple(FeatureKind("numeric", None, f"x{j}") for j in range(d))
    return Dataset(
        name=label, features=X[perm], labels=y[perm], n_classes=2, schema=schema
    )
