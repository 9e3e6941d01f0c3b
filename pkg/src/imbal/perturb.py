"""Training-set robustness perturbations.

Three orthogonal corruptions, each deterministic under its seed and applied
to training splits only:

* label noise: floor(ratio * minority count) minority rows take a random
  larger-class label, and the same number of larger-class rows (matched to
  each class's inflow so every per-class count, and hence the imbalance
  ratio, is unchanged) take the minority label - exactly 2m rows change.
* missing values: exactly floor(ratio * n * d) distinct cells are replaced
  by their column's pre-mask mean.
* imbalance intensification: the minority class keeps
  floor(count * 100 / level) uniformly chosen rows, so level 200 halves the
  minority and doubles the imbalance ratio within rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .data import Dataset, class_distribution
from .errors import InvalidArgumentError
from .seeding import rng_from

__all__ = [
    "PerturbationSpec",
    "inject_label_noise",
    "inject_missing",
    "intensify_imbalance",
    "apply_perturbation",
]


@dataclass(frozen=True)
class PerturbationSpec:
    kind: Literal["none", "label_noise", "missing", "imbalance"] = "none"
    level: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "label_noise", "missing", "imbalance"):
            raise InvalidArgumentError(f"unknown perturbation kind {self.kind!r}")
        if self.kind in ("label_noise", "missing") and not 0.0 <= self.level <= 1.0:
            raise InvalidArgumentError(f"{self.kind} ratio must be in [0, 1]")
        if self.kind == "imbalance" and self.level < 100.0:
            raise InvalidArgumentError("imbalance level is a percent >= 100")

    def key(self) -> str:
        if self.kind == "none":
            return "none"
        level = int(self.level) if float(self.level).is_integer() else self.level
        return f"{self.kind}:{level}"


def inject_label_noise(ds: Dataset, ratio: float, seed: int) -> Dataset:
    """Symmetric label flips that preserve every per-class count."""
    if not 0.0 <= ratio <= 1.0:
        raise InvalidArgumentError(f"noise ratio must be in [0, 1], got {ratio}")
    dist = class_distribution(ds)
    minority = dist.minority
    counts = np.asarray(dist.counts)
    m = int(np.floor(ratio * dist.minority_count))
    non_min_total = int(counts.sum() - dist.minority_count)
    if m > non_min_total:
        raise InvalidArgumentError(
            f"cannot flip {m} rows: only {non_min_total} larger-class rows exist"
        )
    if m == 0:
        return ds.replace(labels=ds.labels.copy())
    rng = rng_from(seed, "label_noise")
    labels = ds.labels.copy()
    min_rows = np.flatnonzero(labels == minority)
    flip_out = rng.choice(min_rows, size=m, replace=False)
    donors_classes = [c for c in range(ds.n_classes) if c != minority and counts[c] > 0]
    gains = {c: 0 for c in donors_classes}
    for row in flip_out:
        eligible = [c for c in donors_classes if gains[c] < counts[c]]
        new_label = int(rng.choice(np.asarray(eligible)))
        labels[row] = new_label
        gains[new_label] += 1
    for c in donors_classes:
        if gains[c] == 0:
            continue
        pool = np.flatnonzero(ds.labels == c)  # original members only
        donors = rng.choice(pool, size=gains[c], replace=False)
        labels[donors] = minority
    return ds.replace(labels=labels)


def inject_missing(ds: Dataset, ratio: float, seed: int) -> Dataset:
    """Mask exactly floor(ratio * n * d) distinct cells with column means."""
    if not 0.0 <= ratio <= 1.0:
        raise InvalidArgumentError(f"missing ratio must be in [0, 1], got {ratio}")
    n, d = ds.features.shape
    k = int(np.floor(ratio * n * d))
    X = ds.features.copy()
    if k == 0:
        return ds.replace(features=X)
    rng = rng_from(seed, "missing")
    cells = rng.choice(n * d, size=k, replace=False)
    col_means = X.mean(axis=0)  # pre-mask statistics
    rows, cols = np.unravel_index(cells, (n, d))
    X[rows, cols] = col_means[cols]
    return ds.replace(features=X)


def intensify_imbalance(ds: Dataset, level: float, seed: int) -> Dataset:
    """Drop minority rows so the kept count is floor(count * 100 / level)."""
    if level < 100.0:
        raise InvalidArgumentError(f"level is a percent >= 100, got {level}")
    dist = class_distribution(ds)
    minority = dist.minority
    keep = int(np.floor(dist.minority_count * 100.0 / level))
    if keep < 2:
        raise InvalidArgumentError(
            f"level {level} would leave {keep} minority rows (need at least 2)"
        )
    rng = rng_from(seed, "imbalance")
    min_rows = np.flatnonzero(ds.labels == minority)
    kept_min = rng.choice(min_rows, size=keep, replace=False)
    drop = np.setdiff1d(min_rows, kept_min)
    mask = np.ones(ds.n_samples, dtype=bool)
    mask[drop] = False
    return ds.subset(np.flatnonzero(mask))


def apply_perturbation(ds: Dataset, spec: PerturbationSpec, seed: int) -> Dataset:
    if spec.kind == "none":
        return ds
    if spec.kind == "label_noise":
        return inject_label_noise(ds, spec.level, seed)
    if spec.kind == "missing":
        return inject_missing(ds, spec.level, seed)
    return intensify_imbalance(ds, spec.level, seed)
