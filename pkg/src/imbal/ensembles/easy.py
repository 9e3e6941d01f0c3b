"""Easy ensemble: boosted committees over independent balanced subsets.

Ten subsets are drawn as in underbagging (ceil(max_samples * minority
count) rows per class, without replacement); each trains a 10-round SAMME
booster whose trees use max_features.  The outer combiner averages the
inner weighted-vote probabilities, giving 100 trees at the defaults.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset, class_distribution
from ..learners.tree import TreeParams
from ..seeding import derive_seed, rng_from
from .base import EnsembleParams, TrainedEnsemble
from .boost import fit_adaboost

__all__ = ["fit_easy_ensemble"]

N_SUBSETS = 10
ROUNDS_PER_SUBSET = 10


def fit_easy_ensemble(
    ds: Dataset,
    params: EnsembleParams = EnsembleParams(),
    seed: int = 0,
    n_subsets: int = N_SUBSETS,
    rounds_per_subset: int = ROUNDS_PER_SUBSET,
) -> TrainedEnsemble:
    dist = class_distribution(ds)
    per_class = max(1, int(np.ceil(params.max_samples * dist.minority_count)))
    groups = []
    for s in range(n_subsets):
        rng = rng_from(seed, "easy", s)
        picks = []
        for c in range(ds.n_classes):
            idx = np.flatnonzero(ds.labels == c)
            if idx.size == 0:
                continue
            take = min(per_class, idx.size)
            picks.append(np.sort(rng.choice(idx, size=take, replace=False)))
        view = np.concatenate(picks)
        sub = ds.subset(view)
        inner = fit_adaboost(
            sub,
            EnsembleParams(
                n_estimators=rounds_per_subset,
                learning_rate=1.0,
                algorithm="SAMME",
            ),
            seed=derive_seed(seed, "easy", s),
            tree_params=TreeParams(max_features=params.max_features),
        )
        groups.append(inner)
    return TrainedEnsemble(n_classes=ds.n_classes, kind="nested", groups=tuple(groups))
