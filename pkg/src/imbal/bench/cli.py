"""Command-line interface: fetch | run | tune | perturb-sweep | report.

Exit codes: 0 success, 1 at least one benchmark job or fetch failed,
2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from ..errors import ImbalError
from ..seeding import derive_seed
from ..tune import TUNABLE_METHODS, random_search
from .config import BenchConfig, ConfigError, load_config
from .report import emit_report, load_records
from .runner import load_source, run_benchmark

__all__ = ["main"]


def _apply_overrides(cfg: BenchConfig, args: argparse.Namespace) -> BenchConfig:
    updates = {}
    if getattr(args, "jobs", None) is not None:
        updates["jobs"] = args.jobs
    if getattr(args, "out", None) is not None:
        updates["out"] = args.out
    return replace(cfg, **updates) if updates else cfg


def _cmd_fetch(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    failures = 0
    for src in cfg.datasets:
        try:
            loaded = load_source(src, cache_dir=args.cache_dir)
            n = (
                loaded.dataset.n_samples
                if loaded.dataset is not None
                else loaded.table.n_rows
            )
            print(f"fetched {src.name}: {n} rows")
        except ImbalError as exc:
            failures += 1
            print(f"FAILED {src.name}: {exc}", file=sys.stderr)
    return 1 if failures else 0


def _run_grid(cfg: BenchConfig, args: argparse.Namespace) -> int:
    def progress(rec):
        line = f"{rec.dataset} {rec.method} fold={rec.fold} seed={rec.seed}"
        if rec.perturb != "none":
            line += f" perturb={rec.perturb}"
        if rec.status == "ok":
            print(f"ok   {line} auprc={rec.auprc:.4f}")
        else:
            print(f"FAIL {line}: {rec.error}", file=sys.stderr)

    done, failed = run_benchmark(
        cfg, global_seed=args.seed, cache_dir=args.cache_dir, progress=progress
    )
    print(f"{done} jobs run, {failed} failed, output in {cfg.out}")
    return 1 if failed else 0


def _cmd_run(args: argparse.Namespace) -> int:
    return _run_grid(_apply_overrides(load_config(args.config), args), args)


def _cmd_perturb_sweep(args: argparse.Namespace) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if all(p.kind == "none" for p in cfg.perturbations):
        raise ConfigError(
            "perturb-sweep needs at least one [[perturb]] entry in the config"
        )
    # the unperturbed baseline rides along: the config loader always keeps
    # a "none" entry in the grid, so every sweep includes its control
    return _run_grid(cfg, args)


def _cmd_tune(args: argparse.Namespace) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    methods = [m for m in cfg.methods if m in TUNABLE_METHODS]
    if not methods:
        raise ConfigError("no tunable methods in the config method list")
    out = Path(cfg.out) / "tuned"
    out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for src in cfg.datasets:
        try:
            loaded = load_source(src, cache_dir=args.cache_dir)
        except ImbalError as exc:
            print(f"FAILED loading {src.name}: {exc}", file=sys.stderr)
            failures += 1
            continue
        if loaded.dataset is not None:
            train = loaded.dataset
        else:
            from ..ingest.tabular import table_to_dataset

            train = table_to_dataset(loaded.table, name=src.name)
        ddir = out / src.name
        ddir.mkdir(parents=True, exist_ok=True)
        for method in methods:
            try:
                best = random_search(
                    train,
                    method,
                    budget=cfg.tune_budget,
                    patience=cfg.tune_patience,
                    seed=derive_seed(args.seed, "cli-tune", src.name, method),
                    n_estimators=cfg.ensemble_size,
                    log_path=str(ddir / f"{method}.trials.jsonl"),
                )
                (ddir / f"{method}.json").write_text(
                    json.dumps(best, sort_keys=True, indent=1) + "\n",
                    encoding="utf-8",
                )
                print(f"tuned {src.name}/{method}: {best}")
            except ImbalError as exc:
                failures += 1
                print(f"FAILED {src.name}/{method}: {exc}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_report(args: argparse.Namespace) -> int:
    records = load_records(args.records)
    out = args.out or str(Path(args.records) / "report")
    written = emit_report(records, out, group_by_ir=args.group_ir)
    print(f"wrote {', '.join(written)} under {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imbal",
        description="Benchmark class-imbalance methods on tabular datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_config: bool = True) -> None:
        if needs_config:
            p.add_argument("--config", required=True, help="TOML config file")
        p.add_argument("--seed", type=int, default=0, help="global seed")
        p.add_argument("--jobs", type=int, default=None, help="parallel jobs")
        p.add_argument("--out", default=None, help="output directory override")
        p.add_argument("--cache-dir", default=None, help="dataset cache directory")

    common(sub.add_parser("fetch", help="download/materialize configured datasets"))
    common(sub.add_parser("run", help="run the configured benchmark grid"))
    common(sub.add_parser("tune", help="random-search hyperparameters"))
    common(
        sub.add_parser(
            "perturb-sweep",
            help="run the grid across the configured perturbation levels",
        )
    )
    rep = sub.add_parser("report", help="aggregate records into tables")
    rep.add_argument(
        "--in", dest="records", required=True,
        help="records.jsonl file or the directory holding it",
    )
    rep.add_argument("--out", default=None, help="report output directory")
    rep.add_argument(
        "--group-ir", action="store_true",
        help="split score tables into imbalance-ratio groups",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "fetch": _cmd_fetch,
        "run": _cmd_run,
        "tune": _cmd_tune,
        "perturb-sweep": _cmd_perturb_sweep,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ImbalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
