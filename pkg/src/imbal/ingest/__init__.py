"""Dataset loading: CSV and ARFF parsers plus a cached OpenML fetcher."""

from .arff import ArffAttribute, ArffHeader, parse_arff, serialize_arff
from .manifest import DATASET_MANIFEST, ManifestEntry, find_entry, manifest_names
from .openml import (
    CacheChecksumError,
    HttpFetchError,
    UnknownDatasetError,
    fetch_openml,
    resolve_dataset_id,
)
from .tabular import MISSING_TOKENS, RawTable, parse_csv, table_to_dataset

__all__ = [
    "RawTable",
    "parse_csv",
    "table_to_dataset",
    "MISSING_TOKENS",
    "ArffAttribute",
    "ArffHeader",
    "parse_arff",
    "serialize_arff",
    "fetch_openml",
    "resolve_dataset_id",
    "HttpFetchError",
    "UnknownDatasetError",
    "CacheChecksumError",
    "ManifestEntry",
    "DATASET_MANIFEST",
    "manifest_names",
    "find_entry",
]
