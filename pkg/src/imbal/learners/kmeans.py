"""Seeded k-means with k-means++ initialization.

Lloyd iterations run until the largest centroid shift drops below 1e-4 or
100 iterations elapse.  An empty cluster is reseeded to the point farthest
from its assigned centroid, lowest index on ties.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidArgumentError
from ..seeding import rng_from
from . import kernels

__all__ = ["kmeans"]

_SHIFT_TOL = 1e-4
_MAX_ITER = 100


def _plusplus_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = X[first]
    closest = kernels.pairwise_sqdist(X, centroids[:1])[:, 0]
    for c in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            # all points coincide with chosen centroids; any point works
            pick = int(rng.integers(n))
        else:
            r = rng.random() * total
            pick = int(np.searchsorted(np.cumsum(closest), r, side="right"))
            pick = min(pick, n - 1)
        centroids[c] = X[pick]
        d_new = kernels.pairwise_sqdist(X, centroids[c : c + 1])[:, 0]
        closest = np.minimum(closest, d_new)
    return centroids


def kmeans(
    X: np.ndarray, k: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Cluster rows of X into k groups; returns (centroids, assignment)."""
    X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
    n = X.shape[0]
    if k < 1 or k > n:
        raise InvalidArgumentError(f"k={k} out of range for {n} points")
    rng = rng_from(seed, "kmeans")
    centroids = _plusplus_init(X, k, rng)
    assign = np.zeros(n, dtype=np.int64)
    for _ in range(_MAX_ITER):
        sq = kernels.pairwise_sqdist(X, centroids)
        assign = np.argmin(sq, axis=1).astype(np.int64)
        # reseed empty clusters with the farthest point from its centroid
        counts = np.bincount(assign, minlength=k)
        for c in np.flatnonzero(counts == 0):
            own = sq[np.arange(n), assign]
            far = int(np.argmax(own))
            centroids[c] = X[far]
            assign[far] = c
            sq[:, c] = kernels.pairwise_sqdist(X, centroids[c : c + 1])[:, 0]
            counts = np.bincount(assign, minlength=k)
        new_centroids = np.empty_like(centroids)
        for f in range(X.shape[1]):
            sums = np.bincount(assign, weights=X[:, f], minlength=k)
            new_centroids[:, f] = sums / counts
        shift = np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max()
        centroids = new_centroids
        if shift < _SHIFT_TOL:
            break
    sq = kernels.pairwise_sqdist(X, centroids)
    assign = np.argmin(sq, axis=1).astype(np.int64)
    return centroids, assign
