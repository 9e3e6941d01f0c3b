"""Benchmark harness: config, resumable runner, report emitter, CLI."""

from .config import BenchConfig, ConfigError, load_config, parse_source
from .report import emit_report, load_records
from .runner import BenchRecord, run_benchmark

__all__ = [
    "BenchConfig",
    "ConfigError",
    "load_config",
    "parse_source",
    "BenchRecord",
    "run_benchmark",
    "emit_report",
    "load_records",
]
