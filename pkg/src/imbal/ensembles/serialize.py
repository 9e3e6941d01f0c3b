"""Ensemble serialization.

File layout (version 1):

* 8-byte magic ``IMBENS01``
* little-endian uint32: JSON header length in bytes
* UTF-8 JSON header: model kind, method tag, params, seed, class count,
  member alphas, and the node count of every tree in depth-first order
  (nested groups are described recursively)
* body: for each tree in that order, the arrays ``feature`` (int64),
  ``threshold`` (float64), ``left`` (int64), ``right`` (int64) and the
  flattened ``value`` matrix (float64, n_nodes * n_classes), all raw
  little-endian

Serialization is deterministic: the same fitted model always produces the
same bytes, so artifact files can be compared byte-for-byte.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from ..errors import InvalidArgumentError
from ..learners.tree import DecisionTree
from .base import TrainedEnsemble

__all__ = ["save_model", "load_model", "model_to_bytes", "model_from_bytes", "MAGIC"]

MAGIC = b"IMBENS01"


def _describe(model: TrainedEnsemble | DecisionTree, trees: list[DecisionTree]) -> dict:
    if isinstance(model, DecisionTree):
        trees.append(model)
        return {"kind": "tree", "n_nodes": model.n_nodes}
    desc: dict = {"kind": model.kind}
    if model.kind == "nested":
        desc["groups"] = [_describe(g, trees) for g in model.groups]
    else:
        desc["alphas"] = [float(a) for a in model.alphas]
        desc["members"] = []
        for m in model.members:
            trees.append(m)
            desc["members"].append({"n_nodes": m.n_nodes})
    return desc


def model_to_bytes(
    model: TrainedEnsemble | DecisionTree,
    method: str = "",
    params: dict | None = None,
    seed: int = 0,
) -> bytes:
    trees: list[DecisionTree] = []
    structure = _describe(model, trees)
    n_classes = model.n_classes
    header = {
        "version": 1,
        "method": method,
        "params": params or {},
        "seed": seed,
        "n_classes": n_classes,
        "structure": structure,
    }
    head = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    chunks = [MAGIC, struct.pack("<I", len(head)), head]
    for t in trees:
        chunks.append(t.feature.astype("<i8").tobytes())
        chunks.append(t.threshold.astype("<f8").tobytes())
        chunks.append(t.left.astype("<i8").tobytes())
        chunks.append(t.right.astype("<i8").tobytes())
        chunks.append(t.value.astype("<f8").ravel().tobytes())
    return b"".join(chunks)


def _read_tree(buf: memoryview, off: int, n_nodes: int, K: int):
    def take(dtype: str, count: int):
        nonlocal off
        size = count * 8
        if off + size > len(buf):
            raise InvalidArgumentError("model payload truncated")
        arr = np.frombuffer(buf[off : off + size], dtype=dtype).copy()
        off += size
        return arr

    feature = take("<i8", n_nodes)
    threshold = take("<f8", n_nodes)
    left = take("<i8", n_nodes)
    right = take("<i8", n_nodes)
    value = take("<f8", n_nodes * K).reshape(n_nodes, K)
    tree = DecisionTree(
        n_classes=K,
        feature=feature,
        threshold=threshold,
        left=left,
        right=right,
        value=value,
    )
    return tree, off


def _rebuild(desc: dict, buf: memoryview, off: int, K: int):
    kind = desc["kind"]
    if kind == "tree":
        return _read_tree(buf, off, desc["n_nodes"], K)
    if kind == "nested":
        groups = []
        for g in desc["groups"]:
            sub, off = _rebuild(g, buf, off, K)
            groups.append(sub)
        return TrainedEnsemble(n_classes=K, kind="nested", groups=tuple(groups)), off
    members = []
    for m in desc["members"]:
        tree, off = _read_tree(buf, off, m["n_nodes"], K)
        members.append(tree)
    ens = TrainedEnsemble(
        n_classes=K,
        kind=kind,
        members=tuple(members),
        alphas=np.asarray(desc["alphas"], dtype=np.float64),
    )
    return ens, off


def model_from_bytes(data: bytes):
    """Inverse of model_to_bytes; returns (model, header dict)."""
    if data[:8] != MAGIC:
        raise InvalidArgumentError("not a serialized model: bad magic")
    (hlen,) = struct.unpack("<I", data[8:12])
    header = json.loads(data[12 : 12 + hlen].decode("utf-8"))
    if header.get("version") != 1:
        raise InvalidArgumentError(f"unsupported model version {header.get('version')}")
    buf = memoryview(data)
    model, off = _rebuild(header["structure"], buf, 12 + hlen, header["n_classes"])
    if off != len(data):
        raise InvalidArgumentError("trailing bytes after model body")
    return model, header


def save_model(
    model: TrainedEnsemble | DecisionTree,
    path: str | Path,
    method: str = "",
    params: dict | None = None,
    seed: int = 0,
) -> None:
    Path(path).write_bytes(model_to_bytes(model, method, params, seed))


def load_model(path: str | Path):
    return model_from_bytes(Path(path).read_bytes())
