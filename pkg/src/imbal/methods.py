"""Method registry: every benchmarked strategy behind one fit interface.

Tags cover the no-balancing baseline, four undersamplers, six cleaning
rules, five oversamplers, two hybrid pipelines, six undersample ensembles,
four oversample ensembles, and four cost-sensitive learners.  Resampling
tags fit one default tree on the resampled view; ensemble tags fit their
ensemble with 100 members by default.  ``fit_method`` returns any object
with predict_proba / predict.
"""

from __future__ import annotations

from dataclasses import fields
from typing import Mapping

from .data import Dataset
from .ensembles.bagging import (
    fit_balanced_forest,
    fit_overbagging,
    fit_smotebagging,
    fit_underbagging,
)
from .ensembles.base import EnsembleParams
from .ensembles.boost import fit_cost_boost, fit_resample_boost
from .ensembles.cascade import fit_balance_cascade
from .ensembles.cost import fit_cost_sensitive_tree
from .ensembles.easy import fit_easy_ensemble
from .ensembles.spe import fit_self_paced
from .errors import InvalidArgumentError
from .learners.tree import TreeParams, fit_tree
from .samplers.base import SamplerParams
from .samplers.clean import (
    edited_nn,
    neighborhood_cleaning_rule,
    one_sided_selection,
    tomek_links,
)
from .samplers.hybrid import smote_enn, smote_tomek
from .samplers.over import random_oversample, smote_family
from .samplers.under import (
    cluster_centroids,
    instance_hardness_threshold,
    near_miss,
    random_undersample,
)
from .seeding import derive_seed

__all__ = [
    "METHOD_TAGS",
    "METHOD_GROUPS",
    "DEFAULT_ENSEMBLE_SIZE",
    "fit_method",
]

DEFAULT_ENSEMBLE_SIZE = 100

METHOD_GROUPS: dict[str, tuple[str, ...]] = {
    "baseline": ("base",),
    "undersample": ("rus", "cc", "iht", "nm"),
    "cleaning": ("tl", "enn", "renn", "aknn", "oss", "ncr"),
    "oversample": ("ros", "smote", "bsmote", "svmsmote", "adasyn"),
    "hybrid": ("smoteenn", "smotetomek"),
    "undersample-ensemble": ("spe", "bc", "brf", "ee", "rusboost", "underbagging"),
    "oversample-ensemble": ("overboost", "smoteboost", "overbagging", "smotebagging"),
    "cost-sensitive": ("cs", "adacost", "adauboost", "asymboost"),
}

METHOD_TAGS: tuple[str, ...] = tuple(
    tag for group in METHOD_GROUPS.values() for tag in group
)

_SAMPLER_FIELDS = {f.name for f in fields(SamplerParams)}
_ENSEMBLE_FIELDS = {f.name for f in fields(EnsembleParams)}
_INT_FIELDS = {"k_neighbors", "m_neighbors", "n_neighbors", "k_bins", "n_estimators"}


def _sampler_params(p: Mapping[str, object]) -> SamplerParams:
    kw = {}
    for k, v in p.items():
        if k in _SAMPLER_FIELDS:
            kw[k] = int(v) if k in _INT_FIELDS else v
    return SamplerParams(**kw)


def _ensemble_params(p: Mapping[str, object], n_estimators: int) -> EnsembleParams:
    kw: dict[str, object] = {"n_estimators": n_estimators}
    for k, v in p.items():
        if k in _ENSEMBLE_FIELDS:
            kw[k] = int(v) if k in _INT_FIELDS else v
    return EnsembleParams(**kw)  # type: ignore[arg-type]


def fit_method(
    ds: Dataset,
    tag: str,
    params: Mapping[str, object] | None = None,
    seed: int = 0,
    n_estimators: int = DEFAULT_ENSEMBLE_SIZE,
):
    """Fit one benchmarked method on an encoded training set."""
    if tag not in METHOD_TAGS:
        raise InvalidArgumentError(f"unknown method tag {tag!r}")
    p = dict(params or {})
    stray = set(p) - _SAMPLER_FIELDS - _ENSEMBLE_FIELDS
    if stray:
        raise InvalidArgumentError(f"unknown method params: {sorted(stray)}")
    sp = _sampler_params(p)
    ep = _ensemble_params(p, n_estimators)

    def tree_on(view: Dataset):
        return fit_tree(
            view.features,
            view.labels,
            params=TreeParams(seed=derive_seed(seed, "tree")),
            n_classes=ds.n_classes,
        )

    if tag == "base":
        return tree_on(ds)
    if tag == "cs":
        return fit_cost_sensitive_tree(ds, seed=derive_seed(seed, "tree"))

    # resample-then-tree methods
    if tag == "rus":
        return tree_on(random_undersample(ds, seed).dataset)
    if tag == "cc":
        return tree_on(cluster_centroids(ds, seed).dataset)
    if tag == "iht":
        return tree_on(instance_hardness_threshold(ds, seed).dataset)
    if tag == "nm":
        return tree_on(near_miss(ds, sp.n_neighbors, seed).dataset)
    if tag == "tl":
        return tree_on(tomek_links(ds, seed).dataset)
    if tag in ("enn", "renn", "aknn"):
        mode = {"enn": "single", "renn": "repeated", "aknn": "allknn"}[tag]
        return tree_on(
            edited_nn(ds, sp.n_neighbors, sp.kind_sel, mode=mode, seed=seed).dataset
        )
    if tag == "oss":
        return tree_on(one_sided_selection(ds, sp.n_neighbors, seed).dataset)
    if tag == "ncr":
        return tree_on(
            neighborhood_cleaning_rule(
                ds, sp.n_neighbors, sp.kind_sel, sp.threshold_cleaning, seed
            ).dataset
        )
    if tag == "ros":
        return tree_on(random_oversample(ds, seed).dataset)
    if tag == "smote":
        return tree_on(smote_family(ds, "classic", sp, seed).dataset)
    if tag == "bsmote":
        return tree_on(smote_family(ds, "borderline", sp, seed).dataset)
    if tag == "svmsmote":
        return tree_on(smote_family(ds, "svm", sp, seed).dataset)
    if tag == "adasyn":
        return tree_on(smote_family(ds, "adasyn", sp, seed).dataset)
    if tag == "smoteenn":
        return tree_on(smote_enn(ds, sp, seed).dataset)
    if tag == "smotetomek":
        return tree_on(smote_tomek(ds, sp, seed).dataset)

    # ensembles
    if tag == "spe":
        return fit_self_paced(ds, ep, seed)
    if tag == "bc":
        return fit_balance_cascade(ds, ep, seed)
    if tag == "brf":
        return fit_balanced_forest(ds, ep, seed)
    if tag == "ee":
        return fit_easy_ensemble(ds, ep, seed)
    if tag == "rusboost":
        return fit_resample_boost(ds, "rusboost", ep, seed)
    if tag == "underbagging":
        return fit_underbagging(ds, ep, seed)
    if tag == "overboost":
        return fit_resample_boost(ds, "overboost", ep, seed)
    if tag == "smoteboost":
        return fit_resample_boost(ds, "smoteboost", ep, seed)
    if tag == "overbagging":
        return fit_overbagging(ds, ep, seed)
    if tag == "smotebagging":
        return fit_smotebagging(ds, ep, seed)
    if tag == "adacost":
        return fit_cost_boost(ds, "adacost", ep, seed)
    if tag == "adauboost":
        return fit_cost_boost(ds, "adauboost", ep, seed)
    if tag == "asymboost":
        return fit_cost_boost(ds, "asymboost", ep, seed)
    raise InvalidArgumentError(f"unhandled method tag {tag!r}")  # pragma: no cover
