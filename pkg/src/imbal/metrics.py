"""Evaluation metrics and cross-method aggregation.

Average precision uses step interpolation over descending unique score
thresholds with tied scores grouped, so permuting samples never changes the
result.  Multi-class scores are macro averages over the classes actually
present in the evaluated labels; absent classes are skipped and logged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "average_precision",
    "auprc_score",
    "macro_f1",
    "balanced_accuracy",
    "MetricTriple",
    "compute_metrics",
    "rank_scores",
    "rank_methods",
    "RankTable",
    "win_ratio_matrix",
]

log = logging.getLogger(__name__)


def average_precision(y_true: np.ndarray, scores: np.ndarray) -> float:
    """Binary average precision: sum of (R_k - R_{k-1}) * P_k over thresholds.

    Requires at least one positive and one negative label.
    """
    y = np.asarray(y_true, dtype=np.int64)
    s = np.asarray(scores, dtype=np.float64)
    if y.shape != s.shape or y.ndim != 1:
        raise InvalidArgumentError("labels and scores must be equal-length vectors")
    if not np.isin(y, (0, 1)).all():
        raise InvalidArgumentError("binary labels must be 0 or 1")
    n_pos = int(y.sum())
    if n_pos == 0:
        raise InvalidArgumentError("average precision undefined without positives")
    if n_pos == y.size:
        raise InvalidArgumentError("average precision undefined without negatives")
    order = np.argsort(-s, kind="mergesort")
    ys = y[order]
    ss = s[order]
    ends = np.append(np.flatnonzero(np.diff(ss) != 0.0), y.size - 1)
    tp = np.cumsum(ys)[ends].astype(np.float64)
    count = (ends + 1).astype(np.float64)
    precision = tp / count
    recall = tp / n_pos
    recall_steps = np.diff(np.concatenate(([0.0], recall)))
    return float(np.sum(recall_steps * precision))


def auprc_score(
    y_true: np.ndarray, proba: np.ndarray, n_classes: int | None = None
) -> float:
    """Macro one-vs-rest average precision over classes present in y_true.

    For K == 2 this reduces to the positive-class average precision of
    whichever classes are present.  Classes absent from y_true, or without
    any negative, are skipped with a logged notice.
    """
    y = np.asarray(y_true, dtype=np.int64)
    P = np.asarray(proba, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != y.shape[0]:
        raise InvalidArgumentError("probability matrix shape mismatch")
    K = int(n_classes) if n_classes is not None else P.shape[1]
    present = np.unique(y)
    vals = []
    skipped = []
    for k in range(K):
        if k not in present:
            skipped.append(k)
            continue
        pos = (y == k).astype(np.int64)
        if pos.all():
            skipped.append(k)
            continue
        vals.append(average_precision(pos, P[:, k]))
    if skipped:
        log.warning("auprc skipped absent/degenerate classes %s", skipped)
    if not vals:
        raise InvalidArgumentError("no class admits an average precision")
    return float(np.mean(vals))


def macro_f1(y_true: np.ndarray, y_pred: np.ndarray, n_classes: int) -> float:
    """Mean F1 over classes present in y_true; P+R == 0 contributes 0."""
    y = np.asarray(y_true, dtype=np.int64)
    p = np.asarray(y_pred, dtype=np.int64)
    if y.shape != p.shape:
        raise InvalidArgumentError("label vectors must have equal length")
    vals = []
    skipped = []
    for k in range(n_classes):
        support = int((y == k).sum())
        if support == 0:
            skipped.append(k)
            continue
        tp = int(((y == k) & (p == k)).sum())
        fp = int(((y != k) & (p == k)).sum())
        fn = support - tp
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn)
        vals.append(2.0 * prec * rec / (prec + rec) if prec + rec else 0.0)
    if skipped:
        log.warning("macro_f1 skipped absent classes %s", skipped)
    if not vals:
        raise InvalidArgumentError("no class present in y_true")
    return float(np.mean(vals))


def balanced_accuracy(y_true: np.ndarray, y_pred: np.ndarray, n_classes: int) -> float:
    """Mean per-class recall over classes present in y_true."""
    y = np.asarray(y_true, dtype=np.int64)
    p = np.asarray(y_pred, dtype=np.int64)
    if y.shape != p.shape:
        raise InvalidArgumentError("label vectors must have equal length")
    recalls = []
    for k in range(n_classes):
        mask = y == k
        if not mask.any():
            continue
        recalls.append(float((p[mask] == k).mean()))
    if not recalls:
        raise InvalidArgumentError("no class present in y_true")
    return float(np.mean(recalls))


@dataclass(frozen=True)
class MetricTriple:
    auprc: float
    macro_f1: float
    balanced_accuracy: float


def compute_metrics(
    y_true: np.ndarray, proba: np.ndarray, n_classes: int
) -> MetricTriple:
    pred = np.argmax(proba, axis=1).astype(np.int64)
    return MetricTriple(
        auprc=auprc_score(y_true, proba, n_classes),
        macro_f1=macro_f1(y_true, pred, n_classes),
        balanced_accuracy=balanced_accuracy(y_true, pred, n_classes),
    )


# ---------------------------------------------------------------------------
# Cross-method aggregation
# ---------------------------------------------------------------------------


def rank_scores(scores: np.ndarray) -> np.ndarray:
    """Ranks 1..M, higher score = better (rank 1); ties get the span mean."""
    s = np.asarray(scores, dtype=np.float64)
    if np.isnan(s).any():
        raise InvalidArgumentError("cannot rank NaN scores")
    order = np.argsort(-s, kind="mergesort")
    ranks = np.empty(s.size)
    i = 0
    while i < s.size:
        j = i
        while j + 1 < s.size and s[order[j + 1]] == s[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


@dataclass(frozen=True)
class RankTable:
    """Per-dataset method ranks plus their column means."""

    methods: tuple[str, ...]
    ranks: np.ndarray       # (n_datasets, n_methods)
    mean_ranks: np.ndarray  # (n_methods,)


def rank_methods(methods: tuple[str, ...] | list[str], scores: np.ndarray) -> RankTable:
    """Rank methods within every dataset row of a dataset-by-method table."""
    S = np.asarray(scores, dtype=np.float64)
    if S.ndim != 2 or S.shape[1] != len(methods):
        raise InvalidArgumentError("scores must be (datasets, methods)")
    ranks = np.vstack([rank_scores(row) for row in S])
    return RankTable(
        methods=tuple(methods),
        ranks=ranks,
        mean_ranks=ranks.mean(axis=0),
    )


def win_ratio_matrix(scores: np.ndarray) -> np.ndarray:
    """W[i, j] = fraction of datasets where method i strictly beats method j.

    Ties count for neither side; the diagonal is zero.
    """
    S = np.asarray(scores, dtype=np.float64)
    if S.ndim != 2:
        raise InvalidArgumentError("scores must be (datasets, methods)")
    m = S.shape[1]
    W = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if i != j:
                W[i, j] = float((S[:, i] > S[:, j]).mean())
    return W
