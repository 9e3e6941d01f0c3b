"""Aggregate benchmark records into CSV + Markdown report tables.

Emitted per call: a mean-score table per metric (rows = methods, columns =
imbalance-ratio groups plus "all"), a mean-rank table across datasets, a
pairwise win-ratio matrix, a score-vs-runtime table, and — when perturbed
records exist — a perturbation table of mean AUPRC per perturbation key.
Runtime columns are machine-relative: absolute milliseconds only compare
within one host.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from pathlib import Path

import numpy as np

from ..errors import InvalidArgumentError
from ..methods import METHOD_TAGS
from ..metrics import rank_methods, win_ratio_matrix
from .runner import BenchRecord, record_from_dict

__all__ = ["IR_GROUPS", "load_records", "emit_report"]

# imbalance-ratio group boundaries: [lo, hi)
IR_GROUPS: tuple[tuple[float, float], ...] = (
    (0.0, 5.0),
    (5.0, 10.0),
    (10.0, 50.0),
    (50.0, 1000.0),
)

_METRICS = ("auprc", "macro_f1", "balanced_accuracy")


def load_records(path: str | Path) -> list[BenchRecord]:
    """Read records from a records.jsonl file or a directory holding one."""
    p = Path(path)
    if p.is_dir():
        p = p / "records.jsonl"
    if not p.exists():
        raise InvalidArgumentError(f"no records file at {p}")
    records = []
    for line in p.read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(record_from_dict(json.loads(line)))
    return records


def _group_label(lo: float, hi: float) -> str:
    def fmt(x: float) -> str:
        return f"{int(x)}" if float(x).is_integer() else f"{x:g}"

    return f"IR [{fmt(lo)},{fmt(hi)})"


def _group_of(ir: float) -> str | None:
    for lo, hi in IR_GROUPS:
        if lo <= ir < hi:
            return _group_label(lo, hi)
    return None


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def _method_order(present: set[str]) -> list[str]:
    ordered = [m for m in METHOD_TAGS if m in present]
    ordered += sorted(present - set(ordered))  # custom tags, if any
    return ordered


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")


def _write_markdown(path: Path, header: list[str], rows: list[list[str]]) -> None:
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _emit(out: Path, stem: str, header: list[str], rows: list[list[str]]) -> None:
    _write_csv(out / f"{stem}.csv", header, rows)
    _write_markdown(out / f"{stem}.md", header, rows)


def _mean(vals: list[float]) -> float | None:
    return float(np.mean(vals)) if vals else None


def emit_report(
    records: list[BenchRecord], out_dir: str | Path, group_by_ir: bool = True
) -> list[str]:
    """Write all report tables; returns the list of file stems written."""
    ok = [r for r in records if r.status == "ok"]
    if not ok:
        raise InvalidArgumentError("no successful records to report on")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    methods = _method_order({r.method for r in ok})
    datasets = sorted({r.dataset for r in ok})
    baseline = [r for r in ok if r.perturb == "none"]
    if not baseline:
        baseline = ok  # a pure perturbation sweep: report what exists

    # (a) per-group mean score per metric
    if group_by_ir:
        groups = [_group_label(lo, hi) for lo, hi in IR_GROUPS]
    else:
        groups = []
    for metric in _METRICS:
        by_cell: dict[tuple[str, str], list[float]] = defaultdict(list)
        for r in baseline:
            v = getattr(r, metric)
            if v is None:
                continue
            by_cell[(r.method, "all")].append(v)
            g = _group_of(r.imbalance_ratio)
            if g is not None:
                by_cell[(r.method, g)].append(v)
        header = ["method"] + groups + ["all"]
        rows = [
            [m] + [_fmt(_mean(by_cell[(m, g)])) for g in groups + ["all"]]
            for m in methods
        ]
        stem = f"scores_{metric}"
        _emit(out, stem, header, rows)
        written.append(stem)

    # per-dataset mean score matrices (datasets x methods), used below
    def dataset_means(metric: str) -> np.ndarray:
        mat = np.full((len(datasets), len(methods)), np.nan)
        for i, d in enumerate(datasets):
            for j, m in enumerate(methods):
                vals = [
                    getattr(r, metric)
                    for r in baseline
                    if r.dataset == d and r.method == m
                    and getattr(r, metric) is not None
                ]
                if vals:
                    mat[i, j] = float(np.mean(vals))
        return mat

    # (b) mean rank across datasets, one column per metric
    rank_cols: dict[str, np.ndarray] = {}
    for metric in _METRICS:
        mat = dataset_means(metric)
        keep = ~np.isnan(mat).any(axis=1)  # rank only fully-populated rows
        if keep.any():
            table = rank_methods(methods, mat[keep])
            rank_cols[metric] = table.mean_ranks
    header = ["method"] + [m for m in _METRICS if m in rank_cols]
    rows = [
        [m] + [f"{rank_cols[met][j]:.3f}" for met in _METRICS if met in rank_cols]
        for j, m in enumerate(methods)
    ]
    _emit(out, "mean_rank", header, rows)
    written.append("mean_rank")

    # (c) pairwise win-ratio matrix by AUPRC
    mat = dataset_means("auprc")
    keep = ~np.isnan(mat).any(axis=1)
    if keep.any():
        wins = win_ratio_matrix(mat[keep])
        header = ["method"] + methods
        rows = [
            [m] + [f"{wins[i, j]:.3f}" for j in range(len(methods))]
            for i, m in enumerate(methods)
        ]
        _emit(out, "win_ratio", header, rows)
        written.append("win_ratio")

    # (d) score vs runtime (machine-relative milliseconds)
    header = ["method", "mean_time_ms", "mean_auprc"]
    rows = []
    for m in methods:
        times = [r.time_ms for r in baseline if r.method == m]
        scores = [
            r.auprc for r in baseline if r.method == m and r.auprc is not None
        ]
        rows.append([m, _fmt(_mean(times)), _fmt(_mean(scores))])
    _emit(out, "score_vs_runtime", header, rows)
    written.append("score_vs_runtime")

    # (e) perturbation sensitivity, when a sweep is present
    perturb_keys = sorted({r.perturb for r in ok} - {"none"})
    if perturb_keys:
        keys = ["none"] + perturb_keys
        header = ["method"] + keys
        rows = []
        for m in methods:
            row = [m]
            for k in keys:
                vals = [
                    r.auprc
                    for r in ok
                    if r.method == m and r.perturb == k and r.auprc is not None
                ]
                row.append(_fmt(_mean(vals)))
            rows.append(row)
        _emit(out, "perturbation_auprc", header, rows)
        written.append("perturbation_auprc")

    return written
