"""Undersamplers: bring every larger class down to the minority count."""

from __future__ import annotations

import numpy as np

from ..data import Dataset, stratified_kfold
from ..errors import InvalidArgumentError
from ..learners.knn import knn_query
from ..learners.kmeans import kmeans
from ..learners.tree import TreeParams, fit_tree
from ..seeding import derive_seed, rng_from
from .base import ResampleResult, build_result, minority_majority

__all__ = [
    "random_undersample",
    "cluster_centroids",
    "instance_hardness_threshold",
    "near_miss",
]


def random_undersample(ds: Dataset, seed: int) -> ResampleResult:
    """Keep a uniform random subset of every non-minority class."""
    minority, _, counts = minority_majority(ds)
    target = int(counts[minority])
    rng = rng_from(seed, "rus")
    kept: list[np.ndarray] = []
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        if c != minority and idx.size > target:
            idx = np.sort(rng.choice(idx, size=target, replace=False))
        kept.append(idx)
    return build_result(ds, np.concatenate(kept))


def cluster_centroids(ds: Dataset, seed: int) -> ResampleResult:
    """Replace each non-minority class by k-means centroids, k = minority count.

    Minority rows pass through untouched; centroid rows are synthetic.
    """
    minority, _, counts = minority_majority(ds)
    target = int(counts[minority])
    kept = np.flatnonzero(ds.labels == minority)
    synth_X: list[np.ndarray] = []
    synth_y: list[np.ndarray] = []
    for c in range(ds.n_classes):
        if c == minority or counts[c] == 0:
            continue
        idx = np.flatnonzero(ds.labels == c)
        centroids, _ = kmeans(ds.features[idx], target, seed=derive_seed(seed, "cc", c))
        synth_X.append(centroids)
        synth_y.append(np.full(target, c, dtype=np.int64))
    return build_result(
        ds, kept, np.vstack(synth_X), np.concatenate(synth_y)
    )


def instance_hardness_threshold(ds: Dataset, seed: int) -> ResampleResult:
    """Keep the easiest non-minority rows by out-of-fold tree probability.

    Hardness is 1 - p(true class) from a 3-fold cross-fit of the default
    tree; each larger class keeps its minority-count easiest rows, lower
    index on ties.
    """
    minority, _, counts = minority_majority(ds)
    present = [c for c in range(ds.n_classes) if counts[c] > 0]
    if min(counts[c] for c in present) < 3:
        raise InvalidArgumentError(
            "instance hardness needs at least 3 samples per class for 3-fold scoring"
        )
    target = int(counts[minority])
    plan = stratified_kfold(ds.labels, 3, seed=seed)
    proba_true = np.empty(ds.n_samples)
    for fold in range(3):
        tr = plan.train_indices(fold)
        te = plan.test_indices(fold)
        tree = fit_tree(
            ds.features[tr],
            ds.labels[tr],
            params=TreeParams(seed=seed),
            n_classes=ds.n_classes,
        )
        proba = tree.predict_proba(ds.features[te])
        proba_true[te] = proba[np.arange(te.size), ds.labels[te]]
    hardness = 1.0 - proba_true
    kept: list[np.ndarray] = []
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        if c != minority and idx.size > target:
            order = np.lexsort((idx, hardness[idx]))
            idx = np.sort(idx[order[:target]])
        kept.append(idx)
    return build_result(ds, np.concatenate(kept))


def near_miss(ds: Dataset, n_neighbors: int, seed: int = 0) -> ResampleResult:
    """NearMiss-1: keep larger-class rows closest on average to the minority.

    Average distance to the row's n_neighbors nearest minority samples,
    ascending; ties break toward the lower index.  The seed is accepted for
    interface uniformity but never consumed.
    """
    minority, _, counts = minority_majority(ds)
    if counts[minority] < n_neighbors:
        raise InvalidArgumentError(
            f"near_miss needs at least n_neighbors={n_neighbors} minority rows, "
            f"have {counts[minority]}"
        )
    target = int(counts[minority])
    min_rows = ds.features[np.flatnonzero(ds.labels == minority)]
    kept: list[np.ndarray] = []
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        if c != minority and idx.size > target:
            _, dists = knn_query(min_rows, ds.features[idx], n_neighbors)
            mean_d = dists.mean(axis=1)
            order = np.lexsort((idx, mean_d))
            idx = np.sort(idx[order[:target]])
        kept.append(idx)
    return build_result(ds, np.concatenate(kept))
