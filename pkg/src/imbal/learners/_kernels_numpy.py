"""Pure-numpy kernel implementations.

These are the reference semantics for the numba kernels: identical
accumulation order, identical tie-breaking (first strictly-better candidate
wins), so both backends produce the same trees and neighbor lists on the
same inputs.
"""

from __future__ import annotations

import numpy as np

__all__ = ["find_best_split", "tree_apply", "pairwise_sqdist", "knn_select"]

# Minimum normalized impurity decrease for a split to be accepted.
GAIN_EPS = 1e-12


def _class_cumsums(w_ord: np.ndarray, y_ord: np.ndarray, n_classes: int) -> list:
    return [np.cumsum(w_ord * (y_ord == k)) for k in range(n_classes)]


def find_best_split(
    X: np.ndarray,
    y: np.ndarray,
    w: np.ndarray,
    feats: np.ndarray,
    n_classes: int,
    min_leaf: int,
) -> tuple[int, float, float]:
    """Best (feature, midpoint threshold) by weighted Gini decrease.

    Returns (-1, 0.0, 0.0) when no candidate improves impurity by more than
    GAIN_EPS.  Candidates are midpoints between adjacent distinct sorted
    values; both children must keep at least ``min_leaf`` rows.
    """
    n = X.shape[0]
    w_total = float(np.cumsum(w)[-1]) if n else 0.0
    if n < 2 * min_leaf or w_total <= 0.0:
        return -1, 0.0, 0.0
    class_tot = np.empty(n_classes)
    for k in range(n_classes):
        class_tot[k] = np.cumsum(w * (y == k))[-1]
    g_parent = 1.0
    for k in range(n_classes):
        p = class_tot[k] / w_total
        g_parent = g_parent - p * p

    best_feat, best_thresh, best_gain = -1, 0.0, GAIN_EPS
    for f in feats:
        f = int(f)
        # stable sort: tied values keep row order, so cumulative weight
        # sums are bit-identical across backends
        order = np.argsort(X[:, f], kind="mergesort")
        v = X[order, f]
        if v[0] == v[-1]:
            continue
        w_ord = w[order]
        y_ord = y[order]
        wl = np.cumsum(w_ord)[:-1]
        wr = w_total - wl
        counts = _class_cumsums(w_ord, y_ord, n_classes)
        sizes = np.arange(1, n)
        valid = (
            (v[1:] > v[:-1])
            & (sizes >= min_leaf)
            & (n - sizes >= min_leaf)
            & (wl > 0.0)
            & (wr > 0.0)
        )
        if not valid.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            g_left = np.ones(n - 1)
            g_right = np.ones(n - 1)
            for k in range(n_classes):
                cl = counts[k][:-1]
                pl = cl / wl
                pr = (class_tot[k] - cl) / wr
                g_left = g_left - pl * pl
                g_right = g_right - pr * pr
            gains = g_parent - (wl / w_total) * g_left - (wr / w_total) * g_right
        gains = np.where(valid, gains, -np.inf)
        i = int(np.argmax(gains))
        if gains[i] > best_gain:
            best_gain = float(gains[i])
            best_feat = f
            best_thresh = (v[i] + v[i + 1]) / 2.0
    if best_feat < 0:
        return -1, 0.0, 0.0
    return best_feat, best_thresh, best_gain


def tree_apply(
    feature: np.ndarray,
    threshold: np.ndarray,
    left: np.ndarray,
    right: np.ndarray,
    X: np.ndarray,
) -> np.ndarray:
    """Leaf node id for every row; rows go left when x[f] <= threshold."""
    n = X.shape[0]
    node = np.zeros(n, dtype=np.int64)
    while True:
        active = np.flatnonzero(feature[node] >= 0)
        if active.size == 0:
            return node
        f = feature[node[active]]
        go_left = X[active, f] <= threshold[node[active]]
        node[active] = np.where(go_left, left[node[active]], right[node[active]])


def pairwise_sqdist(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, accumulated feature-by-feature."""
    n, d = A.shape
    m = B.shape[0]
    acc = np.zeros((n, m))
    for f in range(d):
        diff = A[:, f][:, None] - B[:, f][None, :]
        acc += diff * diff
    return acc


def knn_select(dist: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """k smallest per row, ordered by (distance, index)."""
    n, m = dist.shape
    idx = np.empty((n, k), dtype=np.int64)
    out = np.empty((n, k))
    cols = np.arange(m)
    for i in range(n):
        order = np.lexsort((cols, dist[i]))[:k]
        idx[i] = order
        out[i] = dist[i, order]
    return idx, out
