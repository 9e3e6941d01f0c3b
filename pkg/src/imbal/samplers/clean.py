"""Cleaning rules: remove ambiguous rows instead of balancing counts.

With a protected class set (the minority, for the public ops) cleaned rows
only ever come from other classes; the hybrid pipelines reuse the same
cores with no protected class.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..errors import InvalidArgumentError
from ..learners.knn import knn_query
from ..seeding import rng_from
from .base import ResampleResult, build_result, minority_majority, vote

__all__ = [
    "tomek_links",
    "edited_nn",
    "one_sided_selection",
    "neighborhood_cleaning_rule",
    "find_tomek_links",
    "enn_flags",
]


def find_tomek_links(X: np.ndarray, y: np.ndarray) -> list[tuple[int, int]]:
    """Mutual nearest-neighbor pairs with different labels, as (low, high)."""
    if X.shape[0] < 2:
        return []
    nn, _ = knn_query(X, X, 1, exclude_self=True)
    nn = nn[:, 0]
    links = []
    for i in range(X.shape[0]):
        j = int(nn[i])
        if i < j and int(nn[j]) == i and y[i] != y[j]:
            links.append((i, j))
    return links


def enn_flags(
    X: np.ndarray,
    y: np.ndarray,
    n_neighbors: int,
    kind_sel: str,
    n_classes: int,
    protected: int | None,
) -> np.ndarray:
    """One simultaneous editing pass; True marks a row for removal."""
    n = X.shape[0]
    flags = np.zeros(n, dtype=bool)
    if n_neighbors >= n:
        return flags
    nn, _ = knn_query(X, X, n_neighbors, exclude_self=True)
    for i in range(n):
        if protected is not None and y[i] == protected:
            continue
        labels = y[nn[i]]
        if kind_sel == "mode":
            flags[i] = vote(labels, n_classes) != y[i]
        else:
            flags[i] = bool((labels != y[i]).any())
    return flags


def tomek_links(ds: Dataset, seed: int = 0) -> ResampleResult:
    """Drop the non-minority members of every Tomek link."""
    minority, _, _ = minority_majority(ds)
    links = find_tomek_links(ds.features, ds.labels)
    removed = set()
    for i, j in links:
        for m in (i, j):
            if ds.labels[m] != minority:
                removed.add(m)
    kept = np.array(
        [i for i in range(ds.n_samples) if i not in removed], dtype=np.int64
    )
    return build_result(ds, kept)


def edited_nn(
    ds: Dataset,
    n_neighbors: int,
    kind_sel: str = "all",
    mode: str = "single",
    seed: int = 0,
) -> ResampleResult:
    """Edited nearest neighbors over the non-minority classes.

    mode "single" runs one pass, "repeated" iterates passes to a fixpoint
    (at most 100), "allknn" runs single passes with k = 1..n_neighbors.
    Editing stops early once k would reach the number of remaining rows.
    """
    if mode not in ("single", "repeated", "allknn"):
        raise InvalidArgumentError(f"unknown edited_nn mode {mode!r}")
    minority, _, _ = minority_majority(ds)
    current = np.arange(ds.n_samples, dtype=np.int64)

    def one_pass(k: int) -> bool:
        nonlocal current
        if k >= current.size:
            return False
        flags = enn_flags(
            ds.features[current],
            ds.labels[current],
            k,
            kind_sel,
            ds.n_classes,
            protected=minority,
        )
        if not flags.any():
            return False
        current = current[~flags]
        return True

    if mode == "single":
        one_pass(n_neighbors)
    elif mode == "repeated":
        for _ in range(100):
            if not one_pass(n_neighbors):
                break
    else:
        for k in range(1, n_neighbors + 1):
            if k >= current.size:
                break
            one_pass(k)
    return build_result(ds, current)


def one_sided_selection(ds: Dataset, n_neighbors: int, seed: int) -> ResampleResult:
    """Condensation from minority plus one random larger-class row, then
    Tomek cleaning of the kept set.

    Non-kept rows are visited in ascending original index; a row joins the
    kept set when the kept set's k-NN vote misclassifies it.
    """
    minority, _, _ = minority_majority(ds)
    rng = rng_from(seed, "oss")
    non_min = np.flatnonzero(ds.labels != minority)
    if non_min.size == 0:
        raise InvalidArgumentError("one_sided_selection needs a non-minority class")
    seed_row = int(rng.choice(non_min))
    kept_mask = np.zeros(ds.n_samples, dtype=bool)
    kept_mask[ds.labels == minority] = True
    kept_mask[seed_row] = True
    for i in non_min:
        i = int(i)
        if kept_mask[i]:
            continue
        kept_idx = np.flatnonzero(kept_mask)
        k = min(n_neighbors, kept_idx.size)
        nn, _ = knn_query(ds.features[kept_idx], ds.features[i : i + 1], k)
        predicted = vote(ds.labels[kept_idx[nn[0]]], ds.n_classes)
        if predicted != ds.labels[i]:
            kept_mask[i] = True
    kept_idx = np.flatnonzero(kept_mask)
    links = find_tomek_links(ds.features[kept_idx], ds.labels[kept_idx])
    removed = set()
    for a, b in links:
        for m in (a, b):
            if ds.labels[kept_idx[m]] != minority:
                removed.add(int(kept_idx[m]))
    kept = np.array([i for i in kept_idx if int(i) not in removed], dtype=np.int64)
    return build_result(ds, kept)


def neighborhood_cleaning_rule(
    ds: Dataset,
    n_neighbors: int,
    kind_sel: str = "all",
    threshold_cleaning: float = 0.5,
    seed: int = 0,
) -> ResampleResult:
    """Edited-NN flags plus neighbors of misclassified minority rows.

    The second phase removes a misclassified minority row's neighbors only
    from classes at least ``threshold_cleaning * minority count`` large.
    """
    minority, _, counts = minority_majority(ds)
    removed = set(
        np.flatnonzero(
            enn_flags(
                ds.features,
                ds.labels,
                n_neighbors,
                kind_sel,
                ds.n_classes,
                protected=minority,
            )
        ).tolist()
    )
    size_gate = threshold_cleaning * counts[minority]
    cleanable = {
        c
        for c in range(ds.n_classes)
        if c != minority and counts[c] >= size_gate
    }
    k = min(n_neighbors, ds.n_samples - 1)
    if k >= 1:
        min_idx = np.flatnonzero(ds.labels == minority)
        nn_self, _ = knn_query(ds.features, ds.features, k, exclude_self=True)
        for row in min_idx:
            neighbors = nn_self[row]
            if vote(ds.labels[neighbors], ds.n_classes) != minority:
                for j in neighbors:
                    if int(ds.labels[j]) in cleanable:
                        removed.add(int(j))
    kept = np.array(
        [i for i in range(ds.n_samples) if i not in removed], dtype=np.int64
    )
    return build_result(ds, kept)
