"""Cost-sensitive single tree."""

from __future__ import annotations

import numpy as np

from ..data import Dataset, class_distribution
from ..errors import InvalidArgumentError
from ..learners.tree import DecisionTree, TreeParams, fit_tree
from .base import compute_cost_vector

__all__ = ["fit_cost_sensitive_tree"]


def fit_cost_sensitive_tree(
    ds: Dataset, seed: int = 0, tree_params: TreeParams | None = None
) -> DecisionTree:
    """A single tree whose class weights equal the training cost vector."""
    dist = class_distribution(ds)
    counts = np.asarray(dist.counts, dtype=np.float64)
    if (counts == 0).any():
        raise InvalidArgumentError("cost-sensitive tree needs every class present")
    cost = compute_cost_vector(counts)
    base = tree_params if tree_params is not None else TreeParams()
    params = TreeParams(
        max_depth=base.max_depth,
        min_samples_leaf=base.min_samples_leaf,
        max_features=base.max_features,
        seed=seed,
    )
    return fit_tree(
        ds.features,
        ds.labels,
        params=params,
        n_classes=ds.n_classes,
        class_weight=cost,
    )
