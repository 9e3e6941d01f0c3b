"""Resampling operators over encoded datasets."""

from .base import ResampleResult, SamplerParams, largest_remainder
from .clean import (
    edited_nn,
    neighborhood_cleaning_rule,
    one_sided_selection,
    tomek_links,
)
from .hybrid import smote_enn, smote_tomek
from .over import SMOTE_VARIANTS, random_oversample, smote_family
from .under import (
    cluster_centroids,
    instance_hardness_threshold,
    near_miss,
    random_undersample,
)

__all__ = [
    "ResampleResult",
    "SamplerParams",
    "largest_remainder",
    "edited_nn",
    "neighborhood_cleaning_rule",
    "one_sided_selection",
    "tomek_links",
    "smote_enn",
    "smote_tomek",
    "SMOTE_VARIANTS",
    "random_oversample",
    "smote_family",
    "cluster_centroids",
    "instance_hardness_threshold",
    "near_miss",
    "random_undersample",
]
