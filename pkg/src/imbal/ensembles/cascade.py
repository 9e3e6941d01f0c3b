"""Balance cascade: progressively discard easy larger-class rows.

Each iteration draws a balanced subset from the remaining per-class pools,
fits a tree, and then removes from each pool the fraction
f = 1 - (minority / pool_0) ** (1 / (T-1)) of easiest correctly-classified
rows under the ensemble so far, never shrinking a pool below the minority
count; after T-1 removals each pool has geometrically decayed to roughly
the minority count.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset, class_distribution
from ..learners.tree import DecisionTree, TreeParams, fit_tree
from ..seeding import derive_seed, rng_from
from .base import EnsembleParams, TrainedEnsemble

__all__ = ["fit_balance_cascade", "cascade_keep_fraction"]


def cascade_keep_fraction(minority: int, pool0: int, n_rounds: int) -> float:
    """Per-round removal fraction f; zero when nothing can be removed."""
    if n_rounds <= 1 or pool0 <= minority:
        return 0.0
    return 1.0 - (minority / pool0) ** (1.0 / (n_rounds - 1))


def fit_balance_cascade(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    dist = class_distribution(ds)
    minority = dist.minority
    target = dist.minority_count
    T = params.n_estimators
    min_idx = np.flatnonzero(ds.labels == minority)
    pools: dict[int, np.ndarray] = {}
    fractions: dict[int, float] = {}
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        if c == minority or idx.size == 0:
            continue
        pools[c] = idx
        fractions[c] = cascade_keep_fraction(target, idx.size, T)

    members: list[DecisionTree] = []
    for t in range(T):
        rng = rng_from(seed, "cascade", t)
        picks = [min_idx]
        for c in sorted(pools):
            pool = pools[c]
            take = min(target, pool.size)
            picks.append(
                np.sort(rng.choice(pool, size=take, replace=params.replacement))
            )
        view = np.concatenate(picks)
        members.append(
            fit_tree(
                ds.features[view],
                ds.labels[view],
                params=TreeParams(seed=derive_seed(seed, "tree", t)),
                n_classes=ds.n_classes,
            )
        )
        if t == T - 1:
            break
        # score pools with the ensemble so far and drop the easiest correct rows
        for c in sorted(pools):
            pool = pools[c]
            acc = np.zeros((pool.size, ds.n_classes))
            for m in members:
                acc += m.predict_proba(ds.features[pool])
            proba = acc / len(members)
            pred = np.argmax(proba, axis=1)
            correct = np.flatnonzero(pred == c)
            n_remove = int(np.floor(fractions[c] * pool.size))
            n_remove = min(n_remove, correct.size, pool.size - target)
            if n_remove <= 0:
                continue
            p_true = proba[correct, c]
            order = np.lexsort((pool[correct], -p_true))
            drop = set(pool[correct[order[:n_remove]]].tolist())
            pools[c] = np.array([i for i in pool if int(i) not in drop], dtype=np.int64)
    return TrainedEnsemble(n_classes=ds.n_classes, kind="mean", members=tuple(members))
