"""Weighted CART decision tree.

Greedy binary splits on the weighted Gini criterion.  Every sample carries
an effective weight ``sample_weight * class_weight[label]``; a split is
kept only when it reduces the parent's normalized weighted impurity by more
than 1e-12, which also makes split decisions invariant to rescaling all
weights by a positive constant.  Thresholds are midpoints between adjacent
distinct sorted values and rows go left on ``x <= threshold``.  Leaves store
the weighted class frequency with no smoothing.  The seed is consumed only
when ``max_features < 1``, where each node draws its own feature subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import InvalidArgumentError
from ..seeding import rng_from
from . import kernels

__all__ = ["TreeParams", "DecisionTree", "fit_tree"]


@dataclass(frozen=True)
class TreeParams:
    max_depth: int | None = None
    min_samples_leaf: int = 1
    max_features: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_depth is not None and self.max_depth < 1:
            raise InvalidArgumentError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.min_samples_leaf < 1:
            raise InvalidArgumentError(
                f"min_samples_leaf must be >= 1, got {self.min_samples_leaf}"
            )
        if not (0.0 < self.max_features <= 1.0):
            raise InvalidArgumentError(
                f"max_features must be in (0, 1], got {self.max_features}"
            )


@dataclass(frozen=True)
class DecisionTree:
    """Fitted tree as flat arrays; node 0 is the root, -1 marks a leaf."""

    n_classes: int
    feature: np.ndarray    # int64, -1 for leaves
    threshold: np.ndarray  # float64
    left: np.ndarray       # int64 child ids
    right: np.ndarray
    value: np.ndarray      # (n_nodes, n_classes) class probability

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
        leaves = kernels.tree_apply(
            self.feature, self.threshold, self.left, self.right, X
        )
        return self.value[leaves]

    def predict(self, X: np.ndarray) -> np.ndarray:
        # argmax breaks probability ties toward the lower class id
        return np.argmax(self.predict_proba(X), axis=1).astype(np.int64)


def fit_tree(
    X: np.ndarray,
    y: np.ndarray,
    sample_weight: np.ndarray | None = None,
    params: TreeParams = TreeParams(),
    n_classes: int | None = None,
    class_weight: Sequence[float] | None = None,
) -> DecisionTree:
    """Grow a CART tree to purity or the configured limits."""
    X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    if n == 0:
        raise InvalidArgumentError("cannot fit a tree on zero rows")
    K = int(n_classes) if n_classes is not None else int(y.max()) + 1
    if sample_weight is None:
        w = np.ones(n)
    else:
        w = np.asarray(sample_weight, dtype=np.float64).copy()
        if w.shape != (n,):
            raise InvalidArgumentError("sample_weight length mismatch")
        if (w < 0).any():
            raise InvalidArgumentError("sample weights must be non-negative")
    if class_weight is not None:
        cw = np.asarray(class_weight, dtype=np.float64)
        if cw.shape != (K,):
            raise InvalidArgumentError(
                f"class_weight needs {K} entries, got {cw.shape}"
            )
        w = w * cw[y]

    n_sub = d if params.max_features >= 1.0 else max(1, int(np.ceil(params.max_features * d)))
    rng = rng_from(params.seed, "tree_features") if n_sub < d else None
    all_feats = np.arange(d, dtype=np.int64)
    max_depth = params.max_depth if params.max_depth is not None else np.iinfo(np.int64).max
    min_leaf = params.min_samples_leaf

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[np.ndarray] = []

    def node_value(idx: np.ndarray) -> np.ndarray:
        counts = np.zeros(K)
        np.add.at(counts, y[idx], w[idx])
        total = counts.sum()
        if total <= 0.0:
            return np.full(K, 1.0 / K)
        return counts / total

    # explicit stack, right child pushed first: preorder with left before right
    stack: list[tuple[np.ndarray, int, int, bool]] = [
        (np.arange(n, dtype=np.int64), 0, -1, False)
    ]
    while stack:
        idx, depth, parent, is_left = stack.pop()
        node = len(feature)
        if parent >= 0:
            if is_left:
                left[parent] = node
            else:
                right[parent] = node
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(node_value(idx))
        yi = y[idx]
        if depth >= max_depth or idx.size < 2 * min_leaf or (yi == yi[0]).all():
            continue
        if rng is not None:
            feats = np.sort(rng.choice(d, size=n_sub, replace=False)).astype(np.int64)
        else:
            feats = all_feats
        f, thresh, _gain = kernels.find_best_split(
            X[idx], yi, w[idx], feats, K, min_leaf
        )
        if f < 0:
            continue
        go_left = X[idx, f] <= thresh
        feature[node] = int(f)
        threshold[node] = float(thresh)
        stack.append((idx[~go_left], depth + 1, node, False))
        stack.append((idx[go_left], depth + 1, node, True))

    return DecisionTree(
        n_classes=K,
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.vstack(value),
    )
