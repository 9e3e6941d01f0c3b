"""Benchmark configuration: TOML schema, validation, dataset source specs.

Config keys::

    datasets      list of source strings (required)
    methods       list of method tags (required)
    folds         cross-validation folds, default 5
    seeds         list of global seeds, default [0]
    out           output directory, default "bench-out"
    jobs          parallel jobs, default 1
    ensemble_size trees per ensemble method, default 100
    [[perturb]]   optional tables: kind = "label_noise"|"missing"|"imbalance",
                  level = float  (the unperturbed run is always included)
    [tune]        optional: enabled (bool), budget (default 100),
                  patience (default 10)

Dataset sources::

    "file:PATH[#target=COLUMN]"   local CSV or ARFF file
    "openml:NAME_OR_ID"           fetched via the OpenML API (cached)
    "synthetic:ir=R[,n=N,d=D,seed=S]"  generated Gaussian-overlap data
    bare strings ending in .csv/.arff are files; other bare strings are
    OpenML names
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import ImbalError
from ..methods import METHOD_TAGS
from ..perturb import PerturbationSpec

__all__ = ["ConfigError", "SourceSpec", "BenchConfig", "parse_source", "load_config"]


class ConfigError(ImbalError):
    """Configuration file is malformed or inconsistent."""


@dataclass(frozen=True)
class SourceSpec:
    kind: str  # "file" | "openml" | "synthetic"
    ref: str  # path, name/id, or canonical synthetic descriptor
    target: str | None = None
    synth: dict | None = None  # parsed synthetic parameters

    @property
    def name(self) -> str:
        if self.kind == "file":
            stem = self.ref.replace("\\", "/").rsplit("/", 1)[-1]
            return stem.rsplit(".", 1)[0]
        if self.kind == "openml":
            return self.ref
        return self.ref  # canonical synthetic descriptor doubles as a name


_SYNTH_DEFAULTS = {"n": 2000, "d": 10, "ir": 5.0, "seed": 0}


def parse_source(text: str) -> SourceSpec:
    s = text.strip()
    if not s:
        raise ConfigError("empty dataset source string")
    if s.startswith("synthetic:"):
        params = dict(_SYNTH_DEFAULTS)
        body = s[len("synthetic:") :]
        for part in filter(None, body.split(",")):
            if "=" not in part:
                raise ConfigError(
                    f"synthetic source {text!r}: expected key=value, got {part!r}"
                )
            k, v = part.split("=", 1)
            k = k.strip()
            if k not in _SYNTH_DEFAULTS:
                raise ConfigError(f"synthetic source {text!r}: unknown key {k!r}")
            try:
                params[k] = float(v) if k == "ir" else int(v)
            except ValueError:
                raise ConfigError(
                    f"synthetic source {text!r}: bad value for {k!r}"
                ) from None
        ref = (
            f"synthetic-ir{params['ir']:g}-n{params['n']}"
            f"-d{params['d']}-s{params['seed']}"
        )
        return SourceSpec(kind="synthetic", ref=ref, synth=params)
    if s.startswith("file:"):
        body = s[len("file:") :]
    elif s.startswith("openml:"):
        return SourceSpec(kind="openml", ref=s[len("openml:") :])
    elif s.lower().endswith((".csv", ".arff")):
        body = s
    else:
        return SourceSpec(kind="openml", ref=s)
    target = None
    if "#" in body:
        body, frag = body.split("#", 1)
        if not frag.startswith("target="):
            raise ConfigError(
                f"file source {text!r}: fragment must be #target=COLUMN"
            )
        target = frag[len("target=") :]
    if not body.lower().endswith((".csv", ".arff")):
        raise ConfigError(f"file source {text!r}: expected a .csv or .arff path")
    return SourceSpec(kind="file", ref=body, target=target)


@dataclass(frozen=True)
class BenchConfig:
    datasets: tuple[SourceSpec, ...]
    methods: tuple[str, ...]
    folds: int = 5
    seeds: tuple[int, ...] = (0,)
    perturbations: tuple[PerturbationSpec, ...] = (PerturbationSpec(),)
    tune: bool = False
    tune_budget: int = 100
    tune_patience: int = 10
    out: str = "bench-out"
    jobs: int = 1
    ensemble_size: int = 100

    def __post_init__(self) -> None:
        if not self.datasets:
            raise ConfigError("config needs at least one dataset")
        if not self.methods:
            raise ConfigError("config needs at least one method")
        for m in self.methods:
            if m not in METHOD_TAGS:
                raise ConfigError(f"unknown method tag {m!r}")
        if len(set(self.methods)) != len(self.methods):
            raise ConfigError("duplicate method tags")
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")
        if not self.seeds:
            raise ConfigError("config needs at least one seed")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.ensemble_size < 1:
            raise ConfigError(f"ensemble_size must be >= 1, got {self.ensemble_size}")
        keys = [p.key() for p in self.perturbations]
        if len(set(keys)) != len(keys):
            raise ConfigError("duplicate perturbation entries")


def _expect(d: dict, key: str, types, default=None, required=False):
    if key not in d:
        if required:
            raise ConfigError(f"config is missing required key {key!r}")
        return default
    v = d[key]
    if not isinstance(v, types):
        raise ConfigError(f"config key {key!r} has the wrong type: {v!r}")
    return v


def config_from_dict(doc: dict) -> BenchConfig:
    datasets = _expect(doc, "datasets", list, required=True)
    methods = _expect(doc, "methods", list, required=True)
    if not all(isinstance(s, str) for s in datasets):
        raise ConfigError("config key 'datasets' must be a list of strings")
    if not all(isinstance(s, str) for s in methods):
        raise ConfigError("config key 'methods' must be a list of strings")
    folds = _expect(doc, "folds", int, default=5)
    seeds = _expect(doc, "seeds", list, default=[0])
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in seeds):
        raise ConfigError("config key 'seeds' must be a list of integers")
    out = _expect(doc, "out", str, default="bench-out")
    jobs = _expect(doc, "jobs", int, default=1)
    ensemble_size = _expect(doc, "ensemble_size", int, default=100)

    perturb_entries = _expect(doc, "perturb", list, default=[])
    specs = [PerturbationSpec()]
    for i, entry in enumerate(perturb_entries):
        if not isinstance(entry, dict):
            raise ConfigError(f"perturb entry {i} must be a table")
        kind = _expect(entry, "kind", str, required=True)
        level = _expect(entry, "level", (int, float), required=True)
        try:
            specs.append(PerturbationSpec(kind=kind, level=float(level)))
        except ImbalError as exc:
            raise ConfigError(f"perturb entry {i}: {exc}") from exc

    tune_tbl = _expect(doc, "tune", dict, default={})
    tune = bool(_expect(tune_tbl, "enabled", bool, default=False))
    budget = _expect(tune_tbl, "budget", int, default=100)
    patience = _expect(tune_tbl, "patience", int, default=10)

    known = {
        "datasets", "methods", "folds", "seeds", "out", "jobs",
        "ensemble_size", "perturb", "tune",
    }
    for key in doc:
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")

    return BenchConfig(
        datasets=tuple(parse_source(s) for s in datasets),
        methods=tuple(methods),
        folds=folds,
        seeds=tuple(seeds),
        perturbations=tuple(specs),
        tune=tune,
        tune_budget=budget,
        tune_patience=patience,
        out=out,
        jobs=jobs,
        ensemble_size=ensemble_size,
    )


def load_config(path: str) -> BenchConfig:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid TOML: {exc}") from exc
    return config_from_dict(doc)
