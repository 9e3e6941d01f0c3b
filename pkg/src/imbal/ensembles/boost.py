"""SAMME boosting core with per-round resampling and cost hooks.

One core drives the plain booster, the resample boosters (per-round
undersample / oversample / interpolation), and the cost boosters, which
reshape the weight update exponents:

* adacost: misclassified rows scale by beta-(c) = 0.5c + 0.5, correct rows
  by beta+(c) = 0.5 - 0.5c, applied to the update exponent.
* adauboost: only misclassified rows are up-weighted, with the exponent
  scaled by the row's class cost.
* asymboost: every round pre-multiplies weights by kappa_y ** (1/(2T)),
  kappa_k = c_k / min(c), before the standard update.

Round bookkeeping follows the discrete rules for both algorithms: a round
with weighted error 0 keeps its member with the capped alpha
eta * (ln 1e12 + ln(K-1)) and halts; a round with error >= 1 - 1/K discards
the member, resets weights to uniform, and moves on.  Weights renormalize
to sum 1 after every round.
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from ..data import Dataset, class_distribution
from ..errors import InvalidArgumentError
from ..samplers.base import ResampleResult, SamplerParams
from ..samplers.over import random_oversample, smote_family
from ..samplers.under import random_undersample
from ..seeding import derive_seed
from ..learners.tree import DecisionTree, TreeParams, fit_tree
from .base import EnsembleParams, PROBA_FLOOR, TrainedEnsemble, compute_cost_vector

__all__ = [
    "fit_adaboost",
    "fit_resample_boost",
    "fit_cost_boost",
    "samme_alpha",
    "ALPHA_CAP_LOG",
]

log = logging.getLogger(__name__)

# ln(1e12): alpha cap for perfect rounds
ALPHA_CAP_LOG = np.log(1e12)
_EXP_CLIP = 700.0

Resampler = Callable[[Dataset, int], ResampleResult]
COST_RULES = (None, "adacost", "adauboost", "asymboost")


def samme_alpha(eps: float, n_classes: int, learning_rate: float = 1.0) -> float:
    """Member weight for weighted error eps; eps <= 0 takes the capped value."""
    K = float(n_classes)
    if eps <= 0.0:
        return float(learning_rate * (ALPHA_CAP_LOG + np.log(K - 1.0)))
    return float(learning_rate * (np.log((1.0 - eps) / eps) + np.log(K - 1.0)))


def _view_weights(res: ResampleResult, w: np.ndarray, n_classes: int) -> np.ndarray:
    """Carry ensemble weights onto a resampled view.

    Kept rows keep their weight; each synthetic row takes the mean kept
    weight of its class.
    """
    kept_w = w[res.kept_indices]
    if res.n_synthetic == 0:
        return kept_w
    kept_labels = res.dataset.labels[: res.kept_indices.size]
    syn_labels = res.dataset.labels[res.kept_indices.size :]
    class_mean = np.zeros(n_classes)
    for c in np.unique(syn_labels):
        mask = kept_labels == c
        if mask.any():
            class_mean[c] = kept_w[mask].mean()
        else:
            class_mean[c] = kept_w.mean() if kept_w.size else 1.0
    return np.concatenate([kept_w, class_mean[syn_labels]])


def fit_adaboost(
    ds: Dataset,
    params: EnsembleParams = EnsembleParams(),
    seed: int = 0,
    resampler: Resampler | None = None,
    cost: np.ndarray | None = None,
    cost_rule: str | None = None,
    tree_params: TreeParams | None = None,
    trace: list | None = None,
) -> TrainedEnsemble:
    """Boost weighted trees for up to ``params.n_estimators`` rounds.

    ``trace``, when given, collects one dict per round with the weighted
    error, the member alpha, and the post-update weight sum.
    """
    if cost_rule not in COST_RULES:
        raise InvalidArgumentError(f"unknown cost rule {cost_rule!r}")
    if cost_rule is not None and cost is None:
        raise InvalidArgumentError("cost rules need a cost vector")
    X, y, K = ds.features, ds.labels, ds.n_classes
    n = ds.n_samples
    eta = params.learning_rate
    real = params.algorithm == "SAMME.R"
    T = params.n_estimators
    base_tree = tree_params if tree_params is not None else TreeParams()

    if cost_rule == "asymboost":
        kappa = cost / cost.min()
        pre_mult = kappa[y] ** (1.0 / (2.0 * T))
    else:
        pre_mult = None

    w = np.full(n, 1.0 / n)
    members: list[DecisionTree] = []
    alphas: list[float] = []
    for t in range(T):
        if pre_mult is not None:
            w = w * pre_mult
            w = w / w.sum()
        if resampler is not None:
            res = resampler(ds, derive_seed(seed, "resample", t))
            wv = _view_weights(res, w, K)
            Xv, yv = res.dataset.features, res.dataset.labels
        else:
            Xv, yv, wv = X, y, w
        tp = TreeParams(
            max_depth=base_tree.max_depth,
            min_samples_leaf=base_tree.min_samples_leaf,
            max_features=base_tree.max_features,
            seed=derive_seed(seed, "tree", t),
        )
        tree = fit_tree(Xv, yv, sample_weight=wv / wv.sum(), params=tp, n_classes=K)
        proba = tree.predict_proba(X)
        pred = np.argmax(proba, axis=1)
        mis = pred != y
        eps = float(w[mis].sum())
        if eps <= 0.0:
            members.append(tree)
            alphas.append(samme_alpha(eps, K, eta))
            if trace is not None:
                trace.append(
                    {"round": t, "eps": eps, "alpha": alphas[-1],
                     "weight_sum": float(w.sum())}
                )
            break
        if eps >= 1.0 - 1.0 / K:
            w = np.full(n, 1.0 / n)
            if trace is not None:
                trace.append(
                    {"round": t, "eps": eps, "alpha": None,
                     "weight_sum": float(w.sum())}
                )
            continue
        if real:
            lp = np.log(np.clip(proba, PROBA_FLOOR, None))
            coding = np.full((n, K), -1.0 / (K - 1.0))
            coding[np.arange(n), y] = 1.0
            exponent = -eta * ((K - 1.0) / K) * (coding * lp).sum(axis=1)
            alpha = 1.0
        else:
            alpha = samme_alpha(eps, K, eta)
            exponent = np.where(mis, alpha, 0.0)
        if cost_rule == "adacost":
            beta_minus = 0.5 * cost[y] + 0.5
            beta_plus = 0.5 - 0.5 * cost[y]
            if real:
                exponent = np.where(mis, exponent * beta_minus, exponent * beta_plus)
            else:
                exponent = np.where(mis, alpha * beta_minus, -alpha * beta_plus)
        elif cost_rule == "adauboost":
            if real:
                exponent = np.where(mis, exponent * cost[y], 0.0)
            else:
                exponent = np.where(mis, alpha * cost[y], 0.0)
        w = w * np.exp(np.clip(exponent, -_EXP_CLIP, _EXP_CLIP))
        total = w.sum()
        if not np.isfinite(total) or total <= 0.0:
            w = np.full(n, 1.0 / n)
        else:
            w = w / total
        members.append(tree)
        alphas.append(float(alpha))
        if trace is not None:
            trace.append(
                {"round": t, "eps": eps, "alpha": float(alpha),
                 "weight_sum": float(w.sum())}
            )

    if not members:
        log.warning("every boosting round was discarded; falling back to one tree")
        tree = fit_tree(
            X,
            y,
            params=TreeParams(seed=derive_seed(seed, "tree", "fallback")),
            n_classes=K,
        )
        members.append(tree)
        alphas.append(1.0)

    return TrainedEnsemble(
        n_classes=K,
        kind="samme_r" if real else "vote",
        members=tuple(members),
        alphas=np.asarray(alphas, dtype=np.float64),
    )


def fit_resample_boost(
    ds: Dataset,
    method: str,
    params: EnsembleParams = EnsembleParams(),
    seed: int = 0,
    trace: list | None = None,
) -> TrainedEnsemble:
    """Boosting with a fresh per-round resample of the training view."""
    if method == "rusboost":
        resampler: Resampler = lambda d, s: random_undersample(d, s)
    elif method == "overboost":
        resampler = lambda d, s: random_oversample(d, s)
    elif method == "smoteboost":
        sp = SamplerParams(k_neighbors=params.k_neighbors)
        resampler = lambda d, s: smote_family(d, "classic", sp, s)
    else:
        raise InvalidArgumentError(f"unknown resample boosting method {method!r}")
    return fit_adaboost(ds, params, seed, resampler=resampler, trace=trace)


def fit_cost_boost(
    ds: Dataset,
    kind: str,
    params: EnsembleParams = EnsembleParams(),
    seed: int = 0,
    trace: list | None = None,
) -> TrainedEnsemble:
    """Cost-modulated boosting; costs derive from the training distribution."""
    if kind not in ("adacost", "adauboost", "asymboost"):
        raise InvalidArgumentError(f"unknown cost boosting method {kind!r}")
    dist = class_distribution(ds)
    counts = np.asarray(dist.counts, dtype=np.float64)
    if (counts == 0).any():
        raise InvalidArgumentError("cost boosting needs every class present")
    cost = compute_cost_vector(counts)
    return fit_adaboost(ds, params, seed, cost=cost, cost_rule=kind, trace=trace)
