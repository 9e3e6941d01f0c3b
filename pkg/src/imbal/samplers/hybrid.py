"""Hybrid pipelines: oversample to balance, then clean the result.

Unlike the standalone cleaning ops, the cleaning stage here may remove rows
of any class, synthetic rows included.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..seeding import derive_seed
from .base import ResampleResult, SamplerParams
from .clean import enn_flags, find_tomek_links
from .over import smote_family

__all__ = ["smote_enn", "smote_tomek"]

_ENN_K = 3


def _cleaned_result(base: ResampleResult, keep_mask: np.ndarray) -> ResampleResult:
    ds = base.dataset
    kept_rows = np.flatnonzero(keep_mask)
    n_orig = base.kept_indices.size
    surviving_orig = base.kept_indices[kept_rows[kept_rows < n_orig]]
    n_syn = int((kept_rows >= n_orig).sum())
    out = Dataset(
        name=ds.name,
        features=ds.features[kept_rows],
        labels=ds.labels[kept_rows],
        n_classes=ds.n_classes,
        schema=ds.schema,
    )
    return ResampleResult(
        dataset=out, kept_indices=surviving_orig, n_synthetic=n_syn
    )


def smote_enn(
    ds: Dataset, params: SamplerParams = SamplerParams(), seed: int = 0
) -> ResampleResult:
    """Classic SMOTE to balance, then a k=3 all-agree editing pass on every
    class."""
    smoted = smote_family(ds, "classic", params, derive_seed(seed, "smoteenn"))
    inner = smoted.dataset
    flags = enn_flags(
        inner.features,
        inner.labels,
        _ENN_K,
        "all",
        inner.n_classes,
        protected=None,
    )
    return _cleaned_result(smoted, ~flags)


def smote_tomek(
    ds: Dataset, params: SamplerParams = SamplerParams(), seed: int = 0
) -> ResampleResult:
    """Classic SMOTE to balance, then drop both members of every Tomek link."""
    smoted = smote_family(ds, "classic", params, derive_seed(seed, "smotetomek"))
    inner = smoted.dataset
    keep = np.ones(inner.n_samples, dtype=bool)
    for i, j in find_tomek_links(inner.features, inner.labels):
        keep[i] = False
        keep[j] = False
    return _cleaned_result(smoted, keep)
