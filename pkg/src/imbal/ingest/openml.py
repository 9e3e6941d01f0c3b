"""OpenML dataset fetcher with an on-disk cache and injectable transport.

The transport is any ``callable(url) -> bytes``; tests inject a recording
fake so everything runs offline.  Downloads are cached as
``cache_dir/{id}/data.arff`` plus ``meta.json`` (which stores a sha256 of
the ARFF bytes); a warm cache is authoritative and triggers no network
traffic.  The cache directory resolves as: ``IMBAL_CACHE_DIR`` env var,
then the ``cache_dir`` argument, then ``~/.cache/imbal-openml``.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path
from typing import Callable

from ..errors import ImbalError, InvalidArgumentError
from .arff import parse_arff
from .tabular import RawTable

__all__ = [
    "HttpFetchError",
    "UnknownDatasetError",
    "CacheChecksumError",
    "fetch_openml",
    "resolve_dataset_id",
]

_API_ROOT = "https://www.openml.org/api/v1/json"
_TIMEOUT_S = 60.0

Transport = Callable[[str], bytes]


class HttpFetchError(ImbalError):
    """Transport-level failure (connection, HTTP status, bad payload)."""


class UnknownDatasetError(ImbalError):
    """The service does not know the requested dataset id or name."""


class CacheChecksumError(ImbalError):
    """Cached ARFF bytes do not match the checksum recorded at download."""


def _default_transport(url: str) -> bytes:
    req = urllib.request.Request(url, headers={"User-Agent": "imbal/0.1"})
    with urllib.request.urlopen(req, timeout=_TIMEOUT_S) as resp:
        return resp.read()


def _call(transport: Transport, url: str) -> bytes:
    try:
        return transport(url)
    except urllib.error.HTTPError as exc:
        # OpenML signals unknown ids with 4xx precondition errors
        if exc.code in (404, 412):
            raise UnknownDatasetError(f"{url}: HTTP {exc.code}") from exc
        raise HttpFetchError(f"{url}: HTTP {exc.code}") from exc
    except urllib.error.URLError as exc:
        raise HttpFetchError(f"{url}: {exc.reason}") from exc


def _cache_root(cache_dir: str | os.PathLike | None) -> Path:
    env = os.environ.get("IMBAL_CACHE_DIR")
    if env:
        return Path(env)
    if cache_dir is not None:
        return Path(cache_dir)
    return Path.home() / ".cache" / "imbal-openml"


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


# one writer per dataset id within this process
_locks: dict[str, threading.Lock] = {}
_locks_guard = threading.Lock()


def _lock_for(key: str) -> threading.Lock:
    with _locks_guard:
        return _locks.setdefault(key, threading.Lock())


def _parse_api_json(raw: bytes, what: str) -> dict:
    try:
        payload = json.loads(raw.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise HttpFetchError(f"{what}: response is not valid JSON") from exc
    if "error" in payload:
        err = payload["error"]
        msg = err.get("message", "") if isinstance(err, dict) else str(err)
        if "unknown" in msg.lower() or "not found" in msg.lower():
            raise UnknownDatasetError(f"{what}: {msg}")
        raise HttpFetchError(f"{what}: service error: {msg}")
    return payload


def resolve_dataset_id(
    name: str,
    cache_dir: str | os.PathLike | None = None,
    transport: Transport | None = None,
) -> int:
    """Resolve a dataset name to its lowest active OpenML id (cached)."""
    transport = transport or _default_transport
    root = _cache_root(cache_dir)
    name_file = root / "names" / f"{_safe_name(name)}.json"
    if name_file.exists():
        return int(json.loads(name_file.read_text(encoding="utf-8"))["id"])
    url = f"{_API_ROOT}/data/list/data_name/{urllib.parse.quote(name)}/limit/10"
    payload = _parse_api_json(_call(transport, url), f"name lookup {name!r}")
    rows = payload.get("data", {}).get("dataset", [])
    if not rows:
        raise UnknownDatasetError(f"no dataset named {name!r}")
    # listings can hold several versions; take the lowest (earliest) id
    did = min(int(r["did"]) for r in rows)
    name_file.parent.mkdir(parents=True, exist_ok=True)
    _atomic_write(name_file, json.dumps({"name": name, "id": did}).encode())
    return did


def _safe_name(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def fetch_openml(
    dataset: int | str,
    cache_dir: str | os.PathLike | None = None,
    transport: Transport | None = None,
    target: str | None = None,
) -> RawTable:
    """Fetch a dataset by id or name, using the cache when warm.

    The target column is the explicit ``target`` name if given, else the
    dataset description's default target attribute; with neither, an
    error asks for an explicit target.
    """
    transport = transport or _default_transport
    if isinstance(dataset, str) and not str(dataset).isdigit():
        dataset_id = resolve_dataset_id(dataset, cache_dir, transport)
    else:
        dataset_id = int(dataset)
    root = _cache_root(cache_dir)
    ddir = root / str(dataset_id)
    arff_path = ddir / "data.arff"
    meta_path = ddir / "meta.json"

    with _lock_for(str(dataset_id)):
        if arff_path.exists() and meta_path.exists():
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            raw = arff_path.read_bytes()
            digest = hashlib.sha256(raw).hexdigest()
            if digest != meta.get("sha256"):
                raise CacheChecksumError(
                    f"dataset {dataset_id}: cached ARFF checksum mismatch "
                    f"(delete {ddir} to refetch)"
                )
        else:
            desc_url = f"{_API_ROOT}/data/{dataset_id}"
            payload = _parse_api_json(
                _call(transport, desc_url), f"dataset {dataset_id}"
            )
            desc = payload.get("data_set_description")
            if not isinstance(desc, dict) or "url" not in desc:
                raise HttpFetchError(
                    f"dataset {dataset_id}: malformed description payload"
                )
            raw = _call(transport, desc["url"])
            meta = {
                "id": dataset_id,
                "name": desc.get("name", str(dataset_id)),
                "default_target": desc.get("default_target_attribute"),
                "url": desc["url"],
                "sha256": hashlib.sha256(raw).hexdigest(),
            }
            ddir.mkdir(parents=True, exist_ok=True)
            _atomic_write(arff_path, raw)
            _atomic_write(
                meta_path, json.dumps(meta, sort_keys=True, indent=1).encode()
            )

    _, table = parse_arff(raw)
    target_name = target or meta.get("default_target")
    if not target_name:
        raise InvalidArgumentError(
            f"dataset {dataset_id} declares no default target; "
            "pass target=<column name>"
        )
    lowered = [c.lower() for c in table.columns]
    try:
        idx = lowered.index(str(target_name).lower())
    except ValueError:
        raise InvalidArgumentError(
            f"dataset {dataset_id}: target column {target_name!r} "
            "not among the attributes"
        ) from None
    return table.with_target(idx)
