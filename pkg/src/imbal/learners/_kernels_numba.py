"""Numba kernel implementations.

Mirrors ``_kernels_numpy`` operation-for-operation: stable sorts, the same
accumulation order for every floating-point sum, and first-strictly-better
tie-breaking, so both backends return bit-identical results.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["find_best_split", "tree_apply", "pairwise_sqdist", "knn_select", "warmup"]

GAIN_EPS = 1e-12

_OPTS = dict(cache=True, nogil=True)


@njit(**_OPTS)
def find_best_split(X, y, w, feats, n_classes, min_leaf):  # pragma: no cover
    n = X.shape[0]
    w_total = 0.0
    for i in range(n):
        w_total += w[i]
    if n < 2 * min_leaf or w_total <= 0.0:
        return -1, 0.0, 0.0
    class_tot = np.zeros(n_classes)
    for i in range(n):
        class_tot[y[i]] += w[i]
    g_parent = 1.0
    for k in range(n_classes):
        p = class_tot[k] / w_total
        g_parent = g_parent - p * p

    best_feat = -1
    best_thresh = 0.0
    best_gain = GAIN_EPS
    cl = np.zeros(n_classes)
    for fi in range(feats.shape[0]):
        f = feats[fi]
        col = X[:, f].copy()
        order = np.argsort(col, kind="mergesort")
        if col[order[0]] == col[order[n - 1]]:
            continue
        for k in range(n_classes):
            cl[k] = 0.0
        wl = 0.0
        for i in range(n - 1):
            r = order[i]
            wl += w[r]
            cl[y[r]] += w[r]
            vi = col[order[i]]
            vnext = col[order[i + 1]]
            if vnext <= vi:
                continue
            nl = i + 1
            if nl < min_leaf or n - nl < min_leaf:
                continue
            wr = w_total - wl
            if wl <= 0.0 or wr <= 0.0:
                continue
            g_left = 1.0
            g_right = 1.0
            for k in range(n_classes):
                pl = cl[k] / wl
                pr = (class_tot[k] - cl[k]) / wr
                g_left = g_left - pl * pl
                g_right = g_right - pr * pr
            gain = g_parent - (wl / w_total) * g_left - (wr / w_total) * g_right
            if gain > best_gain:
                best_gain = gain
                best_feat = f
                best_thresh = (vi + vnext) / 2.0
    if best_feat < 0:
        return -1, 0.0, 0.0
    return best_feat, best_thresh, best_gain


@njit(**_OPTS)
def tree_apply(feature, threshold, left, right, X):  # pragma: no cover
    n = X.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out


@njit(**_OPTS)
def pairwise_sqdist(A, B):  # pragma: no cover
    n, d = A.shape
    m = B.shape[0]
    acc = np.zeros((n, m))
    for f in range(d):
        for i in range(n):
            a = A[i, f]
            for j in range(m):
                diff = a - B[j, f]
                acc[i, j] += diff * diff
    return acc


@njit(**_OPTS)
def knn_select(dist, k):  # pragma: no cover
    n, m = dist.shape
    idx = np.empty((n, k), dtype=np.int64)
    out = np.empty((n, k))
    for i in range(n):
        used = np.zeros(m, dtype=np.bool_)
        for slot in range(k):
            best_j = -1
            best_d = np.inf
            for j in range(m):
                if used[j]:
                    continue
                dj = dist[i, j]
                if dj < best_d:
                    best_d = dj
                    best_j = j
            used[best_j] = True
            idx[i, slot] = best_j
            out[i, slot] = best_d
    return idx, out


def warmup() -> None:
    """Trigger JIT compilation of every kernel on tiny inputs."""
    X = np.array([[0.0, 1.0], [1.0, 0.0], [2.0, 1.5], [3.0, 0.5]])
    y = np.array([0, 1, 0, 1], dtype=np.int64)
    w = np.full(4, 0.25)
    feats = np.arange(2, dtype=np.int64)
    find_best_split(X, y, w, feats, 2, 1)
    feature = np.array([0, -1, -1], dtype=np.int64)
    thresh = np.array([1.5, 0.0, 0.0])
    left = np.array([1, -1, -1], dtype=np.int64)
    right = np.array([2, -1, -1], dtype=np.int64)
    tree_apply(feature, thresh, left, right, X)
    d = pairwise_sqdist(X, X)
    knn_select(d, 2)
