"""Resumable benchmark runner.

The grid is datasets x methods x folds x seeds x perturbations; every cell
becomes exactly one record, success or failure.  Records are appended to
``records.jsonl`` alongside a ``keys.txt`` index used to skip completed
cells on rerun.  Jobs may run on a thread pool, but results are written in
submission order with wall time kept out of the deterministic payload, so
any parallelism degree yields byte-identical payloads.

Per-fold pipeline: split on raw labels, fit preprocessing on the training
split only, encode both splits, perturb the training split if configured,
optionally tune, then fit and score.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..data import (
    Dataset,
    encode_labels,
    preprocess_apply,
    preprocess_fit,
    stratified_kfold,
)
from ..errors import ImbalError, InvalidArgumentError
from ..ingest.arff import parse_arff
from ..ingest.openml import fetch_openml
from ..ingest.tabular import RawTable, parse_csv
from ..metrics import compute_metrics
from ..methods import fit_method
from ..perturb import PerturbationSpec, apply_perturbation
from ..seeding import derive_seed
from ..synthetic import make_gaussian_overlap
from ..tune import TUNABLE_METHODS, random_search
from .config import BenchConfig, SourceSpec

__all__ = [
    "BenchRecord",
    "Job",
    "load_source",
    "run_benchmark",
    "record_key",
    "record_from_dict",
    "plan_jobs",
]

_STD_EPS = 1e-12


@dataclass(frozen=True)
class BenchRecord:
    dataset: str
    method: str
    fold: int
    seed: int
    perturb: str
    status: str  # "ok" | "failed"
    auprc: float | None
    macro_f1: float | None
    balanced_accuracy: float | None
    imbalance_ratio: float
    params: dict
    error: str | None
    time_ms: float

    def payload(self) -> dict:
        """Deterministic content: everything except measured wall time."""
        return {
            "dataset": self.dataset,
            "method": self.method,
            "fold": self.fold,
            "seed": self.seed,
            "perturb": self.perturb,
            "status": self.status,
            "auprc": self.auprc,
            "macro_f1": self.macro_f1,
            "balanced_accuracy": self.balanced_accuracy,
            "imbalance_ratio": self.imbalance_ratio,
            "params": self.params,
            "error": self.error,
        }

    def to_json(self) -> str:
        doc = self.payload()
        doc["time_ms"] = self.time_ms
        return json.dumps(doc, sort_keys=True)


def record_from_dict(doc: dict) -> BenchRecord:
    return BenchRecord(
        dataset=doc["dataset"],
        method=doc["method"],
        fold=int(doc["fold"]),
        seed=int(doc["seed"]),
        perturb=doc["perturb"],
        status=doc["status"],
        auprc=doc["auprc"],
        macro_f1=doc["macro_f1"],
        balanced_accuracy=doc["balanced_accuracy"],
        imbalance_ratio=float(doc.get("imbalance_ratio", 0.0)),
        params=doc.get("params", {}),
        error=doc.get("error"),
        time_ms=float(doc.get("time_ms", 0.0)),
    )


def record_key(dataset: str, method: str, fold: int, seed: int, perturb: str) -> str:
    return f"{dataset}|{method}|{fold}|{seed}|{perturb}"


# ---------------------------------------------------------------------------
# Dataset sources
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LoadedSource:
    """A source materialized either as a raw table or an encoded dataset."""

    name: str
    table: RawTable | None = None
    dataset: Dataset | None = None

    @property
    def labels_for_split(self) -> np.ndarray:
        if self.dataset is not None:
            return self.dataset.labels
        y, _ = encode_labels(self.table.label_cells())
        return y


def load_source(src: SourceSpec, cache_dir: str | None = None) -> LoadedSource:
    if src.kind == "synthetic":
        p = src.synth or {}
        ds = make_gaussian_overlap(
            n=int(p["n"]),
            d=int(p["d"]),
            imbalance_ratio=float(p["ir"]),
            seed=int(p["seed"]),
            name=src.name,
        )
        return LoadedSource(name=src.name, dataset=ds)
    if src.kind == "file":
        raw = Path(src.ref).read_bytes()
        if src.ref.lower().endswith(".arff"):
            _, table = parse_arff(raw)
            if src.target is not None:
                lowered = [c.lower() for c in table.columns]
                if src.target.lower() not in lowered:
                    raise InvalidArgumentError(
                        f"{src.ref}: target column {src.target!r} not found"
                    )
                table = table.with_target(lowered.index(src.target.lower()))
        else:
            table = parse_csv(raw, target_column=src.target)
        return LoadedSource(name=src.name, table=table)
    if src.kind == "openml":
        table = fetch_openml(src.ref, cache_dir=cache_dir, target=src.target)
        return LoadedSource(name=src.name, table=table)
    raise InvalidArgumentError(f"unknown source kind {src.kind!r}")


def _standardize_split(
    train: np.ndarray, test: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Per-column standardization fitted on the training rows only."""
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    std = np.where(std < _STD_EPS, _STD_EPS, std)
    return (train - mean) / std, (test - mean) / std


def _fold_arrays(
    loaded: LoadedSource, tr: np.ndarray, te: np.ndarray
) -> tuple[Dataset, np.ndarray, np.ndarray, int]:
    """Encode one fold: training Dataset plus test features and labels."""
    if loaded.dataset is not None:
        ds = loaded.dataset
        Xtr, Xte = _standardize_split(ds.features[tr], ds.features[te])
        train = Dataset(
            name=ds.name, features=Xtr, labels=ds.labels[tr],
            n_classes=ds.n_classes, schema=ds.schema,
        )
        return train, Xte, ds.labels[te], ds.n_classes

    table = loaded.table
    rows = table.feature_rows()
    y, classes = encode_labels(table.label_cells())
    model = preprocess_fit([rows[i] for i in tr], table.feature_schema())
    Xtr = preprocess_apply(model, [rows[i] for i in tr])
    Xte = preprocess_apply(model, [rows[i] for i in te])
    train = Dataset(
        name=loaded.name, features=Xtr, labels=y[tr],
        n_classes=len(classes), schema=model.out_schema,
    )
    return train, Xte, y[te], len(classes)


# ---------------------------------------------------------------------------
# Job execution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Job:
    dataset: str
    method: str
    fold: int
    seed: int
    spec: PerturbationSpec
    job_seed: int

    @property
    def key(self) -> str:
        return record_key(self.dataset, self.method, self.fold, self.seed,
                          self.spec.key())


def _run_job(job: Job, loaded: LoadedSource, cfg: BenchConfig) -> BenchRecord:
    base = {
        "dataset": job.dataset,
        "method": job.method,
        "fold": job.fold,
        "seed": job.seed,
        "perturb": job.spec.key(),
    }
    try:
        y_all = loaded.labels_for_split
        plan = stratified_kfold(
            y_all, cfg.folds, derive_seed(job.seed, "folds", job.dataset)
        )
        ir = _full_ir(y_all)
        train, Xte, yte, n_classes = _fold_arrays(
            loaded, plan.train_indices(job.fold), plan.test_indices(job.fold)
        )
        if job.spec.kind != "none":
            train = apply_perturbation(
                train, job.spec, derive_seed(job.job_seed, "perturb")
            )
        params: dict = {}
        if cfg.tune and job.method in TUNABLE_METHODS:
            params = random_search(
                train,
                job.method,
                budget=cfg.tune_budget,
                patience=cfg.tune_patience,
                seed=derive_seed(job.job_seed, "tune"),
                n_estimators=cfg.ensemble_size,
            )
        t0 = time.perf_counter()
        model = fit_method(
            train, job.method, params, seed=job.job_seed,
            n_estimators=cfg.ensemble_size,
        )
        proba = model.predict_proba(Xte)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        triple = compute_metrics(yte, proba, n_classes)
        return BenchRecord(
            **base,
            status="ok",
            auprc=triple.auprc,
            macro_f1=triple.macro_f1,
            balanced_accuracy=triple.balanced_accuracy,
            imbalance_ratio=ir,
            params=params,
            error=None,
            time_ms=elapsed_ms,
        )
    except Exception as exc:  # a failed cell is a record, never an abort
        return BenchRecord(
            **base,
            status="failed",
            auprc=None,
            macro_f1=None,
            balanced_accuracy=None,
            imbalance_ratio=0.0,
            params={},
            error=f"{type(exc).__name__}: {exc}",
            time_ms=0.0,
        )


def _full_ir(y: np.ndarray) -> float:
    counts = np.bincount(y)
    counts = counts[counts > 0]
    if counts.size < 2:
        return 1.0
    return round(float(counts.max()) / float(counts.min()), 6)


def plan_jobs(cfg: BenchConfig, global_seed: int = 0) -> list[Job]:
    """Expand the config grid; job seeds are collision-checked."""
    jobs: list[Job] = []
    seen: dict[int, str] = {}
    for src in cfg.datasets:
        for method in cfg.methods:
            for seed in cfg.seeds:
                for fold in range(cfg.folds):
                    for spec in cfg.perturbations:
                        js = derive_seed(
                            global_seed, src.name, method, fold, seed, spec.key()
                        )
                        key = record_key(src.name, method, fold, seed, spec.key())
                        if js in seen:
                            raise InvalidArgumentError(
                                f"job seed collision: {key} vs {seen[js]}"
                            )
                        seen[js] = key
                        jobs.append(
                            Job(
                                dataset=src.name,
                                method=method,
                                fold=fold,
                                seed=seed,
                                spec=spec,
                                job_seed=js,
                            )
                        )
    return jobs


def _load_completed(records_path: Path, keys_path: Path) -> set[str]:
    done: set[str] = set()
    if keys_path.exists():
        done.update(
            line.strip()
            for line in keys_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        )
    elif records_path.exists():  # index lost: rebuild from records
        for line in records_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            done.add(
                record_key(
                    doc["dataset"], doc["method"], doc["fold"], doc["seed"],
                    doc["perturb"],
                )
            )
    return done


def run_benchmark(
    cfg: BenchConfig,
    global_seed: int = 0,
    cache_dir: str | None = None,
    progress=None,
) -> tuple[int, int]:
    """Run all pending grid cells; returns (completed now, failed now).

    ``progress`` is an optional callable taking one finished BenchRecord.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    records_path = out / "records.jsonl"
    keys_path = out / "keys.txt"

    sources = {src.name: load_source(src, cache_dir) for src in cfg.datasets}
    jobs = [
        j
        for j in plan_jobs(cfg, global_seed)
        if j.key not in _load_completed(records_path, keys_path)
    ]
    if not jobs:
        return 0, 0

    failed = 0
    with open(records_path, "a", encoding="utf-8") as rec_fh, open(
        keys_path, "a", encoding="utf-8"
    ) as key_fh:

        def write(rec: BenchRecord, key: str) -> None:
            nonlocal failed
            rec_fh.write(rec.to_json() + "\n")
            rec_fh.flush()
            key_fh.write(key + "\n")
            key_fh.flush()
            if rec.status == "failed":
                failed += 1
            if progress is not None:
                progress(rec)

        if cfg.jobs == 1:
            for job in jobs:
                write(_run_job(job, sources[job.dataset], cfg), job.key)
        else:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                futures = [
                    (job, pool.submit(_run_job, job, sources[job.dataset], cfg))
                    for job in jobs
                ]
                # write in submission order: identical files at any -j
                for job, fut in futures:
                    write(fut.result(), job.key)
    return len(jobs), failed
