"""Imbalanced-classification toolkit.

Resamplers, tree ensembles, and cost-sensitive learners over a weighted
CART base tree, with deterministic evaluation utilities and a reproducible
benchmark harness.  Hot kernels run on numba when available, with a
pure-numpy fallback selected by the ``IMBAL_DISABLE_NUMBA`` environment
variable.
"""

from .data import (
    ClassDistribution,
    ColumnSpec,
    Dataset,
    FeatureKind,
    FoldPlan,
    PreprocessModel,
    class_distribution,
    encode_labels,
    preprocess_apply,
    preprocess_fit,
    stratified_kfold,
)
from .errors import ImbalError, InvalidArgumentError, InvalidDatasetError
from .metrics import (
    MetricTriple,
    auprc_score,
    average_precision,
    balanced_accuracy,
    compute_metrics,
    macro_f1,
    rank_methods,
    win_ratio_matrix,
)
from .seeding import derive_seed, rng_from

__version__ = "0.1.0"

__all__ = [
    "ClassDistribution",
    "ColumnSpec",
    "Dataset",
    "FeatureKind",
    "FoldPlan",
    "PreprocessModel",
    "class_distribution",
    "encode_labels",
    "preprocess_apply",
    "preprocess_fit",
    "stratified_kfold",
    "ImbalError",
    "InvalidArgumentError",
    "InvalidDatasetError",
    "MetricTriple",
    "auprc_score",
    "average_precision",
    "balanced_accuracy",
    "compute_metrics",
    "macro_f1",
    "rank_methods",
    "win_ratio_matrix",
    "derive_seed",
    "rng_from",
    "__version__",
]
