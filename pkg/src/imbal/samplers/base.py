"""Shared sampler types and helpers.

Every resampler maps a Dataset to a ResampleResult whose rows are the kept
original rows in ascending original order followed by any synthetic rows
grouped by class.  Identical (dataset, params, seed) inputs give
bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..data import Dataset, class_distribution
from ..errors import InvalidArgumentError

__all__ = [
    "SamplerParams",
    "ResampleResult",
    "build_result",
    "largest_remainder",
    "vote",
]


@dataclass(frozen=True)
class SamplerParams:
    """Knobs shared across the resampler family.

    k_neighbors: same-class neighbors used to generate interpolated rows.
    m_neighbors: all-class neighborhood for danger/safety assessment.
    n_neighbors: editing / distance neighborhood for cleaning rules.
    kind_sel:    "all" removes unless every neighbor agrees with the label,
                 "mode" removes when the majority vote disagrees.
    threshold_cleaning: class-size fraction gate for neighborhood cleaning.
    """

    k_neighbors: int = 5
    m_neighbors: int = 10
    n_neighbors: int = 3
    kind_sel: Literal["all", "mode"] = "all"
    threshold_cleaning: float = 0.5

    def __post_init__(self) -> None:
        for name in ("k_neighbors", "m_neighbors", "n_neighbors"):
            v = getattr(self, name)
            if not 1 <= v <= 10:
                raise InvalidArgumentError(f"{name} must be in 1..10, got {v}")
        if self.kind_sel not in ("all", "mode"):
            raise InvalidArgumentError(f"kind_sel must be all|mode, got {self.kind_sel}")
        if not 0.0 <= self.threshold_cleaning <= 1.0:
            raise InvalidArgumentError(
                f"threshold_cleaning must be in [0, 1], got {self.threshold_cleaning}"
            )


@dataclass(frozen=True)
class ResampleResult:
    """Resampled dataset plus provenance."""

    dataset: Dataset
    kept_indices: np.ndarray  # original row positions, ascending
    n_synthetic: int


def build_result(
    ds: Dataset,
    kept: np.ndarray,
    synth_X: np.ndarray | None = None,
    synth_y: np.ndarray | None = None,
) -> ResampleResult:
    kept = np.sort(np.asarray(kept, dtype=np.int64))
    X = ds.features[kept]
    y = ds.labels[kept]
    n_syn = 0
    if synth_X is not None and len(synth_X):
        X = np.vstack([X, np.asarray(synth_X, dtype=np.float64)])
        y = np.concatenate([y, np.asarray(synth_y, dtype=np.int64)])
        n_syn = len(synth_X)
    out = Dataset(
        name=ds.name,
        features=X,
        labels=y,
        n_classes=ds.n_classes,
        schema=ds.schema,
    )
    return ResampleResult(dataset=out, kept_indices=kept, n_synthetic=n_syn)


def largest_remainder(weights: np.ndarray, total: int) -> np.ndarray:
    """Integer allocation of ``total`` proportional to non-negative weights.

    Floors the exact quotas, then hands leftover units to the largest
    remainders, lower index first on ties.
    """
    w = np.asarray(weights, dtype=np.float64)
    if total < 0:
        raise InvalidArgumentError("total must be non-negative")
    if w.size == 0:
        if total:
            raise InvalidArgumentError("cannot allocate to zero bins")
        return np.zeros(0, dtype=np.int64)
    if (w < 0).any() or w.sum() <= 0:
        raise InvalidArgumentError("weights must be non-negative with positive sum")
    quota = w / w.sum() * total
    alloc = np.floor(quota).astype(np.int64)
    short = int(total - alloc.sum())
    if short > 0:
        rem = quota - alloc
        order = np.lexsort((np.arange(w.size), -rem))
        alloc[order[:short]] += 1
    return alloc


def vote(neighbor_labels: np.ndarray, n_classes: int) -> int:
    """Majority vote with ties broken toward the lower class id."""
    counts = np.bincount(neighbor_labels, minlength=n_classes)
    return int(np.argmax(counts))


def split_by_class(ds: Dataset) -> dict[int, np.ndarray]:
    return {int(c): np.flatnonzero(ds.labels == c) for c in np.unique(ds.labels)}


def minority_majority(ds: Dataset) -> tuple[int, int, np.ndarray]:
    dist = class_distribution(ds)
    counts = np.asarray(dist.counts)
    return dist.minority, dist.majority, counts
