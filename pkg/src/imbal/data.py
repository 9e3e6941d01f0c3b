"""Dataset container, class statistics, preprocessing, and fold planning.

A :class:`Dataset` is the common currency of the package: a dense float64
feature matrix plus integer class labels in ``0..n_classes-1``.  Raw tables
(mixed numeric / categorical cells) are turned into datasets by a fitted
:class:`PreprocessModel`: numeric columns are standardized to zero mean and
unit variance (population standard deviation), two-category columns become a
single 0/1 ordinal column, and wider categorical columns become one-hot
blocks.  Stratified fold assignment is deterministic given a seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidDatasetError
from .seeding import rng_from

__all__ = [
    "FeatureKind",
    "Dataset",
    "ClassDistribution",
    "class_distribution",
    "ColumnSpec",
    "PreprocessModel",
    "preprocess_fit",
    "preprocess_apply",
    "encode_labels",
    "FoldPlan",
    "stratified_kfold",
]

# Standard deviation below this is treated as zero (constant column).
_STD_EPS = 1e-12


@dataclass(frozen=True)
class FeatureKind:
    """Describes one column of an encoded feature matrix.

    kind:
        "numeric"  - standardized numeric column
        "binary"   - ordinal 0/1 encoding of a two-category column
        "onehot"   - one column of a one-hot block
    cardinality:
        number of categories in the source column (None for numeric)
    """

    kind: Literal["numeric", "binary", "onehot"]
    cardinality: int | None = None
    name: str = ""


@dataclass(frozen=True)
class Dataset:
    """Encoded dataset: float64 features, integer labels, column schema."""

    name: str
    features: np.ndarray
    labels: np.ndarray
    n_classes: int
    schema: tuple[FeatureKind, ...] = ()

    def __post_init__(self) -> None:
        X = np.ascontiguousarray(np.asarray(self.features, dtype=np.float64))
        y = np.ascontiguousarray(np.asarray(self.labels, dtype=np.int64))
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)
        if X.ndim != 2:
            raise InvalidDatasetError(
                f"{self.name}: features must be 2-D, got shape {X.shape}"
            )
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise InvalidDatasetError(
                f"{self.name}: labels shape {y.shape} does not match "
                f"{X.shape[0]} rows"
            )
        bad = ~np.isfinite(X)
        if bad.any():
            col = int(np.argwhere(bad)[0][1])
            raise InvalidDatasetError(
                f"{self.name}: non-finite feature value in column {col}"
            )
        if self.n_classes < 2:
            raise InvalidDatasetError(
                f"{self.name}: need at least 2 classes, declared {self.n_classes}"
            )
        if y.size and (y.min() < 0 or y.max() >= self.n_classes):
            raise InvalidDatasetError(
                f"{self.name}: labels outside 0..{self.n_classes - 1}"
            )
        if self.schema and len(self.schema) != X.shape[1]:
            raise InvalidDatasetError(
                f"{self.name}: schema length {len(self.schema)} != "
                f"{X.shape[1]} columns"
            )

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    def subset(self, indices: np.ndarray, name: str | None = None) -> "Dataset":
        """Row subset in the given index order; schema and n_classes carry over."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            name=name if name is not None else self.name,
            features=self.features[idx],
            labels=self.labels[idx],
            n_classes=self.n_classes,
            schema=self.schema,
        )

    def replace(self, features=None, labels=None, name=None) -> "Dataset":
        return Dataset(
            name=self.name if name is None else name,
            features=self.features if features is None else features,
            labels=self.labels if labels is None else labels,
            n_classes=self.n_classes,
            schema=self.schema,
        )


@dataclass(frozen=True)
class ClassDistribution:
    """Per-class counts with minority/majority identification."""

    counts: tuple[int, ...]
    minority: int
    majority: int
    imbalance_ratio: float

    @property
    def minority_count(self) -> int:
        return self.counts[self.minority]

    @property
    def majority_count(self) -> int:
        return self.counts[self.majority]


def class_distribution(ds: Dataset) -> ClassDistribution:
    """Counts, minority/majority class ids, and imbalance ratio.

    Ties are broken toward the lower class id.  Raises if fewer than two
    classes are actually present.
    """
    counts = np.bincount(ds.labels, minlength=ds.n_classes)
    present = np.flatnonzero(counts)
    if present.size < 2:
        raise InvalidDatasetError(
            f"{ds.name}: fewer than 2 classes present ({present.size})"
        )
    present_counts = counts[present]
    minority = int(present[np.argmin(present_counts)])
    majority = int(present[np.argmax(present_counts)])
    ir = float(counts[majority]) / float(counts[minority])
    return ClassDistribution(
        counts=tuple(int(c) for c in counts),
        minority=minority,
        majority=majority,
        imbalance_ratio=ir,
    )


# ---------------------------------------------------------------------------
# Preprocessing: raw table -> encoded matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColumnSpec:
    """Declared type of one raw feature column.

    categories: full sorted category list for categorical columns (declared
    over the whole table, not the training split, so a split that happens to
    miss a category still maps consistently).
    """

    kind: Literal["numeric", "categorical"]
    categories: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind == "categorical" and not self.categories:
            raise InvalidArgumentError(
                f"categorical column {self.name!r} needs a category list"
            )


@dataclass(frozen=True)
class PreprocessModel:
    """Frozen encoding + standardization statistics from a training split."""

    schema: tuple[ColumnSpec, ...]
    means: tuple[float, ...]          # per input column; 0.0 for categorical
    stds: tuple[float, ...]           # population std; 1.0 for categorical
    out_schema: tuple[FeatureKind, ...]

    @property
    def out_dim(self) -> int:
        return len(self.out_schema)


def _column_cells(rows: Sequence[Sequence[object]], j: int) -> list[object]:
    return [row[j] for row in rows]


def _as_float(cell: object, col: str) -> float:
    if cell is None:
        return np.nan
    try:
        return float(cell)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise InvalidDatasetError(
            f"numeric column {col!r} holds non-numeric cell {cell!r}"
        ) from None


def preprocess_fit(
    rows: Sequence[Sequence[object]], schema: Sequence[ColumnSpec]
) -> PreprocessModel:
    """Learn standardization statistics and category codes from training rows.

    Numeric statistics use the population standard deviation; a column with
    std below 1e-12 is clamped so constant columns map to exactly zero.
    Missing numeric cells (None) are excluded from the statistics.
    """
    schema = tuple(schema)
    if not rows:
        raise InvalidArgumentError("cannot fit preprocessing on an empty table")
    width = len(schema)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InvalidDatasetError(
                f"row {i} has {len(row)} cells, schema declares {width}"
            )
    means: list[float] = []
    stds: list[float] = []
    out_schema: list[FeatureKind] = []
    for j, col in enumerate(schema):
        if col.kind == "numeric":
            vals = np.array(
                [_as_float(c, col.name) for c in _column_cells(rows, j)],
                dtype=np.float64,
            )
            ok = vals[~np.isnan(vals)]
            if ok.size == 0:
                mean, std = 0.0, 1.0
            else:
                mean = float(ok.mean())
                std = float(ok.std())  # population std
            if std < _STD_EPS:
                std = _STD_EPS
            means.append(mean)
            stds.append(std)
            out_schema.append(FeatureKind("numeric", None, col.name))
        else:
            cats = tuple(col.categories or ())
            means.append(0.0)
            stds.append(1.0)
            if len(cats) <= 2:
                out_schema.append(FeatureKind("binary", len(cats), col.name))
            else:
                for cat in cats:
                    out_schema.append(
                        FeatureKind("onehot", len(cats), f"{col.name}={cat}")
                    )
    return PreprocessModel(
        schema=schema,
        means=tuple(means),
        stds=tuple(stds),
        out_schema=tuple(out_schema),
    )


def preprocess_apply(
    model: PreprocessModel, rows: Sequence[Sequence[object]]
) -> np.ndarray:
    """Encode rows with a fitted model into a dense float64 matrix.

    Numeric cells are standardized with the stored statistics; missing ones
    take the stored mean (standardizing to zero).  Two-category columns map
    to 0/1 in sorted category order; wider ones map to one-hot blocks, with
    unseen or missing categories giving an all-zero block.
    """
    n = len(rows)
    out = np.zeros((n, model.out_dim), dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != len(model.schema):
            raise InvalidDatasetError(
                f"row {i} has {len(row)} cells, model expects {len(model.schema)}"
            )
        o = 0
        for j, col in enumerate(model.schema):
            if col.kind == "numeric":
                v = _as_float(row[j], col.name)
                if np.isnan(v):
                    v = model.means[j]
                out[i, o] = (v - model.means[j]) / model.stds[j]
                o += 1
            else:
                cats = col.categories or ()
                cell = row[j]
                if len(cats) <= 2:
                    if cell is not None and str(cell) == cats[-1] and len(cats) == 2:
                        out[i, o] = 1.0
                    # category 0, unseen, or missing all map to 0
                    o += 1
                else:
                    if cell is not None:
                        try:
                            k = cats.index(str(cell))
                            out[i, o + k] = 1.0
                        except ValueError:
                            pass  # unseen category: all-zero block
                    o += len(cats)
    return out


def encode_labels(cells: Sequence[object]) -> tuple[np.ndarray, tuple[str, ...]]:
    """Map a label column to class ids 0..K-1 by sorted category text.

    Missing labels are rejected: a row without a class cannot be scored.
    """
    texts = []
    for i, c in enumerate(cells):
        if c is None:
            raise InvalidDatasetError(f"row {i} has a missing class label")
        texts.append(str(c))
    classes = tuple(sorted(set(texts)))
    lookup = {c: k for k, c in enumerate(classes)}
    return np.array([lookup[t] for t in texts], dtype=np.int64), classes


# ---------------------------------------------------------------------------
# Stratified fold assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FoldPlan:
    """Deterministic fold assignment: fold id per sample."""

    k: int
    assignment: np.ndarray
    seed: int = field(default=0)

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment != fold)


def stratified_kfold(labels: np.ndarray, k: int, seed: int) -> FoldPlan:
    """Assign samples to k folds, balanced within every class.

    Within each class the indices are shuffled by a seeded generator and then
    dealt round-robin over folds, starting at fold ``class_id % k`` so small
    classes do not all land in fold 0.  Per-class fold counts therefore never
    differ by more than one.
    """
    y = np.asarray(labels, dtype=np.int64)
    n = y.shape[0]
    if k < 2:
        raise InvalidArgumentError(f"need k >= 2 folds, got {k}")
    if k > n:
        raise InvalidArgumentError(f"k={k} folds exceed {n} samples")
    assignment = np.full(n, -1, dtype=np.int64)
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        rng = rng_from(seed, "stratified_kfold", int(cls))
        idx = idx[rng.permutation(idx.size)]
        start = int(cls) % k
        for j, sample in enumerate(idx):
            assignment[sample] = (start + j) % k
    fold_sizes = np.bincount(assignment, minlength=k)
    if (fold_sizes == 0).any():
        empty = int(np.flatnonzero(fold_sizes == 0)[0])
        raise InvalidArgumentError(
            f"fold {empty} would be empty with k={k} on {n} samples"
        )
    return FoldPlan(k=k, assignment=assignment, seed=seed)
