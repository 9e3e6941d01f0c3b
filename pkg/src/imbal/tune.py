"""Seeded uniform random search over per-method hyperparameter spaces.

Each trial draws one configuration, scores it by stratified 5-fold mean
AUPRC on the given training table, and the winner is the argmax over all
trials plus the default configuration (ties go to the default, then to the
earliest trial).  Search stops early after ``patience`` consecutive trials
without improvement.  The fold plan is built once per (dataset, method)
call so every trial sees identical splits.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, FoldPlan, stratified_kfold
from .errors import ImbalError, InvalidArgumentError
from .methods import DEFAULT_ENSEMBLE_SIZE, fit_method
from .metrics import auprc_score
from .seeding import derive_seed, rng_from

__all__ = [
    "IntRange",
    "RealRange",
    "Choice",
    "SEARCH_SPACES",
    "TUNABLE_METHODS",
    "TrialRecord",
    "default_params",
    "evaluate_params",
    "random_search",
]

_FOLDS = 5
# learning_rate's nominal range is [0.0, 1.0] but eta=0 turns every boosting
# round into a no-op, so draws are clamped away from zero.
_ETA_FLOOR = 1e-3


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int  # inclusive


@dataclass(frozen=True)
class RealRange:
    lo: float
    hi: float
    floor: float | None = None  # clamp applied to draws, not to the domain


@dataclass(frozen=True)
class Choice:
    options: tuple


_NEIGH = IntRange(1, 10)
_KIND = Choice(("all", "mode"))
_FRAC = RealRange(0.5, 1.0)
_ETA = RealRange(0.0, 1.0, floor=_ETA_FLOOR)
_ALGO = Choice(("SAMME", "SAMME.R"))

SEARCH_SPACES: dict[str, dict[str, IntRange | RealRange | Choice]] = {
    "nm": {"n_neighbors": _NEIGH},
    "enn": {"n_neighbors": _NEIGH, "kind_sel": _KIND},
    "renn": {"n_neighbors": _NEIGH, "kind_sel": _KIND},
    "aknn": {"n_neighbors": _NEIGH, "kind_sel": _KIND},
    "oss": {"n_neighbors": _NEIGH},
    "ncr": {
        "n_neighbors": _NEIGH,
        "kind_sel": _KIND,
        "threshold_cleaning": RealRange(0.0, 1.0),
    },
    "smote": {"k_neighbors": _NEIGH},
    "bsmote": {"k_neighbors": _NEIGH, "m_neighbors": _NEIGH},
    "svmsmote": {"k_neighbors": _NEIGH, "m_neighbors": _NEIGH},
    "adasyn": {"n_neighbors": _NEIGH},
    "spe": {"k_bins": _NEIGH},
    "bc": {"replacement": Choice((True, False))},
    "brf": {"max_samples": _FRAC, "max_features": _FRAC},
    "ee": {"max_samples": _FRAC, "max_features": _FRAC},
    "rusboost": {"learning_rate": _ETA, "algorithm": _ALGO},
    "underbagging": {"max_samples": _FRAC, "max_features": _FRAC},
    "overboost": {"learning_rate": _ETA, "algorithm": _ALGO},
    "overbagging": {"max_samples": _FRAC, "max_features": _FRAC},
    "smoteboost": {
        "learning_rate": _ETA,
        "algorithm": _ALGO,
        "k_neighbors": _NEIGH,
    },
    "smotebagging": {
        "max_samples": _FRAC,
        "max_features": _FRAC,
        "k_neighbors": _NEIGH,
    },
    "adacost": {"learning_rate": _ETA, "algorithm": _ALGO},
    "adauboost": {"learning_rate": _ETA, "algorithm": _ALGO},
    "asymboost": {"learning_rate": _ETA, "algorithm": _ALGO},
}

TUNABLE_METHODS: tuple[str, ...] = tuple(SEARCH_SPACES)

_PARAM_DEFAULTS: dict[str, object] = {
    "n_neighbors": 3,
    "kind_sel": "all",
    "threshold_cleaning": 0.5,
    "k_neighbors": 5,
    "m_neighbors": 10,
    "k_bins": 5,
    "replacement": False,
    "max_samples": 1.0,
    "max_features": 1.0,
    "learning_rate": 1.0,
    "algorithm": "SAMME",
}


def default_params(method: str) -> dict[str, object]:
    """Default configuration restricted to the method's tunable parameters."""
    if method not in SEARCH_SPACES:
        raise InvalidArgumentError(f"method {method!r} is not tunable")
    return {name: _PARAM_DEFAULTS[name] for name in SEARCH_SPACES[method]}


@dataclass(frozen=True)
class TrialRecord:
    method: str
    trial: int  # 0 = default configuration, 1.. = random draws
    params: dict
    fold_scores: tuple[float, ...]
    score: float  # mean of fold_scores; -inf when every fold failed
    seed: int
    wall_time: float
    errors: tuple[str, ...] = field(default=())

    def to_json(self) -> str:
        payload = {
            "method": self.method,
            "trial": self.trial,
            "params": self.params,
            "fold_scores": list(self.fold_scores),
            "score": None if math.isinf(self.score) else self.score,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "errors": list(self.errors),
        }
        return json.dumps(payload, sort_keys=True)


def _draw(space: dict, rng: np.random.Generator) -> dict[str, object]:
    out: dict[str, object] = {}
    for name, dom in space.items():
        if isinstance(dom, IntRange):
            out[name] = int(rng.integers(dom.lo, dom.hi + 1))
        elif isinstance(dom, RealRange):
            v = float(rng.uniform(dom.lo, dom.hi))
            if dom.floor is not None and v < dom.floor:
                v = dom.floor
            out[name] = v
        else:
            out[name] = dom.options[int(rng.integers(len(dom.options)))]
    return out


def evaluate_params(
    ds: Dataset,
    method: str,
    params: dict[str, object],
    plan: FoldPlan,
    seed: int,
    n_estimators: int = DEFAULT_ENSEMBLE_SIZE,
) -> tuple[tuple[float, ...], float, tuple[str, ...]]:
    """Score one configuration by k-fold mean AUPRC.

    A fold where fitting or scoring raises a toolkit error contributes 0.0
    (infeasible configurations lose to feasible ones instead of aborting
    the search); if every fold fails the mean is -inf so the trial can
    never win.
    """
    scores: list[float] = []
    errors: list[str] = []
    any_ok = False
    for f in range(plan.k):
        tr, te = plan.train_indices(f), plan.test_indices(f)
        try:
            model = fit_method(
                ds.subset(tr),
                method,
                params,
                seed=derive_seed(seed, "fold", f),
                n_estimators=n_estimators,
            )
            proba = model.predict_proba(ds.features[te])
            scores.append(auprc_score(ds.labels[te], proba, ds.n_classes))
            any_ok = True
        except ImbalError as exc:
            scores.append(0.0)
            errors.append(f"fold {f}: {exc}")
    mean = float(np.mean(scores)) if any_ok else float("-inf")
    return tuple(scores), mean, tuple(errors)


def random_search(
    ds: Dataset,
    method: str,
    budget: int = 100,
    patience: int = 10,
    seed: int = 0,
    n_estimators: int = DEFAULT_ENSEMBLE_SIZE,
    log_path: str | None = None,
) -> dict[str, object]:
    """Uniform random search; returns the winning configuration.

    The default configuration is always evaluated (trial 0) and wins ties.
    Early stop triggers only after ``patience`` consecutive random trials
    fail to strictly improve on the best score seen so far.
    """
    if method not in SEARCH_SPACES:
        raise InvalidArgumentError(f"method {method!r} is not tunable")
    if budget < 1:
        raise InvalidArgumentError(f"budget must be >= 1, got {budget}")
    if patience < 1:
        raise InvalidArgumentError(f"patience must be >= 1, got {patience}")

    space = SEARCH_SPACES[method]
    plan = stratified_kfold(ds.labels, _FOLDS, derive_seed(seed, "tune_folds", method))
    rng = rng_from(seed, "tune", method)
    records: list[TrialRecord] = []

    def run_trial(trial: int, params: dict[str, object]) -> TrialRecord:
        t0 = time.perf_counter()
        fold_scores, mean, errs = evaluate_params(
            ds, method, params, plan, derive_seed(seed, "trial", trial), n_estimators
        )
        rec = TrialRecord(
            method=method,
            trial=trial,
            params=dict(params),
            fold_scores=fold_scores,
            score=mean,
            seed=seed,
            wall_time=time.perf_counter() - t0,
            errors=errs,
        )
        records.append(rec)
        return rec

    best = run_trial(0, default_params(method))
    since_improve = 0
    for t in range(1, budget + 1):
        rec = run_trial(t, _draw(space, rng))
        if rec.score > best.score:
            best = rec
            since_improve = 0
        else:
            since_improve += 1
        if since_improve >= patience:
            break

    if log_path is not None:
        with open(log_path, "a", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec.to_json() + "\n")
    return dict(best.params)
