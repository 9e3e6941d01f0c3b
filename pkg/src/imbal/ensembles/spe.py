"""Self-paced undersampling ensemble.

Each iteration scores every larger-class row by hardness, 1 - p(true class)
under the current ensemble (a provisional balanced-bootstrap tree before the
first member exists), splits each larger class into equal-width hardness
bins, and draws that class down to the minority count with per-bin weights
proportional to 1 / (mean bin hardness + alpha_i).  The self-paced factor
alpha_i = tan(i * pi / (2 (T-1))) starts at 0, so early members emphasize
low-hardness-dominated allocations, and grows without bound (capped at
1e12), flattening the allocation toward uniform over non-empty bins.
Members train on all minority rows plus the sampled rows and combine by
mean probability.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset, class_distribution
from ..learners.tree import DecisionTree, TreeParams, fit_tree
from ..seeding import derive_seed, rng_from
from .base import EnsembleParams, TrainedEnsemble
from ..samplers.base import largest_remainder

__all__ = ["fit_self_paced", "self_paced_alpha", "bin_allocation"]

ALPHA_CAP = 1e12
_DENOM_EPS = 1e-14


def self_paced_alpha(i: int, n_rounds: int) -> float:
    """tan(i * pi / (2 (T-1))), 0 at i=0, capped at 1e12."""
    if i == 0 or n_rounds <= 1:
        return 0.0
    alpha = float(np.tan(i * np.pi / (2.0 * (n_rounds - 1))))
    if not np.isfinite(alpha) or alpha > ALPHA_CAP or alpha < 0.0:
        return ALPHA_CAP
    return min(alpha, ALPHA_CAP)


def bin_allocation(
    hardness: np.ndarray, k_bins: int, alpha: float, target: int
) -> list[tuple[np.ndarray, int]]:
    """Per-bin draw counts for one class.

    Equal-width bins over [min, max] hardness (a single bin when constant);
    weights 1 / (mean + alpha); empty bins are skipped; counts round by
    largest remainder and are capped at bin size, redistributing any excess
    to the remaining bins until the target is met exactly.  Returns
    (bin member positions, draw count) pairs for bins with a positive count.
    """
    n = hardness.size
    lo, hi = float(hardness.min()), float(hardness.max())
    if hi <= lo:
        edges = np.array([lo, hi + 1.0])
    else:
        edges = np.linspace(lo, hi, k_bins + 1)
    which = np.clip(np.searchsorted(edges, hardness, side="right") - 1, 0, len(edges) - 2)
    all_bins = [np.flatnonzero(which == b) for b in range(len(edges) - 1)]
    bins = [b for b in all_bins if b.size > 0]
    weights = np.array(
        [1.0 / (hardness[b].mean() + alpha + _DENOM_EPS) for b in bins]
    )
    sizes = np.array([b.size for b in bins], dtype=np.int64)
    counts = np.zeros(len(bins), dtype=np.int64)
    remaining = int(min(target, n))
    open_bins = np.arange(len(bins))
    while remaining > 0 and open_bins.size > 0:
        alloc = largest_remainder(weights[open_bins], remaining)
        take = np.minimum(alloc, sizes[open_bins] - counts[open_bins])
        counts[open_bins] += take
        remaining -= int(take.sum())
        open_bins = open_bins[counts[open_bins] < sizes[open_bins]]
    return [(bins[i], int(counts[i])) for i in range(len(bins)) if counts[i] > 0]


def fit_self_paced(
    ds: Dataset, params: EnsembleParams = EnsembleParams(), seed: int = 0
) -> TrainedEnsemble:
    dist = class_distribution(ds)
    minority = dist.minority
    target = dist.minority_count
    T = params.n_estimators
    min_idx = np.flatnonzero(ds.labels == minority)
    members: list[DecisionTree] = []

    # provisional scorer: one tree on a balanced bootstrap
    boot_rng = rng_from(seed, "spe", "bootstrap")
    picks = [min_idx]
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        if c == minority or idx.size == 0:
            continue
        picks.append(np.sort(boot_rng.choice(idx, size=target, replace=True)))
    boot_view = np.concatenate(picks)
    scorer_tree = fit_tree(
        ds.features[boot_view],
        ds.labels[boot_view],
        params=TreeParams(seed=derive_seed(seed, "spe", "scorer")),
        n_classes=ds.n_classes,
    )

    for i in range(T):
        if members:
            acc = np.zeros((ds.n_samples, ds.n_classes))
            for m in members:
                acc += m.predict_proba(ds.features)
            proba = acc / len(members)
        else:
            proba = scorer_tree.predict_proba(ds.features)
        hard_all = 1.0 - proba[np.arange(ds.n_samples), ds.labels]
        alpha = self_paced_alpha(i, T)
        rng = rng_from(seed, "spe", "draw", i)
        picks = [min_idx]
        for c in range(ds.n_classes):
            idx = np.flatnonzero(ds.labels == c)
            if c == minority or idx.size == 0:
                continue
            if idx.size <= target:
                picks.append(idx)
                continue
            chosen = [
                rng.choice(idx[b], size=cnt, replace=False)
                for b, cnt in bin_allocation(hard_all[idx], params.k_bins, alpha, target)
            ]
            picks.append(np.sort(np.concatenate(chosen)))
        view = np.concatenate(picks)
        members.append(
            fit_tree(
                ds.features[view],
                ds.labels[view],
                params=TreeParams(seed=derive_seed(seed, "tree", i)),
                n_classes=ds.n_classes,
            )
        )
    return TrainedEnsemble(n_classes=ds.n_classes, kind="mean", members=tuple(members))
