"""Tree ensembles and cost-sensitive learners."""

from .bagging import (
    fit_balanced_forest,
    fit_overbagging,
    fit_smotebagging,
    fit_underbagging,
)
from .base import EnsembleParams, TrainedEnsemble, compute_cost_vector
from .boost import fit_adaboost, fit_cost_boost, fit_resample_boost, samme_alpha
from .cascade import fit_balance_cascade
from .cost import fit_cost_sensitive_tree
from .easy import fit_easy_ensemble
from .serialize import load_model, model_from_bytes, model_to_bytes, save_model
from .spe import fit_self_paced

__all__ = [
    "fit_balanced_forest",
    "fit_overbagging",
    "fit_smotebagging",
    "fit_underbagging",
    "EnsembleParams",
    "TrainedEnsemble",
    "compute_cost_vector",
    "fit_adaboost",
    "fit_cost_boost",
    "fit_resample_boost",
    "samme_alpha",
    "fit_balance_cascade",
    "fit_cost_sensitive_tree",
    "fit_easy_ensemble",
    "load_model",
    "model_from_bytes",
    "model_to_bytes",
    "save_model",
    "fit_self_paced",
]
