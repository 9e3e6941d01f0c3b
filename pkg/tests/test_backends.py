"""Compiled vs pure-numpy kernel backends must agree bit-for-bit."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from imbal.learners import backend
from imbal.learners import _kernels_numpy as knp

numba_backend = pytest.importorskip(
    "imbal.learners._kernels_numba", reason="numba unavailable"
)

pytestmark = pytest.mark.skipif(
    not backend.HAVE_NUMBA, reason="numba not importable"
)


def _split_case(rng):
    n = int(rng.integers(6, 60))
    d = int(rng.integers(1, 5))
    K = int(rng.integers(2, 4))
    X = np.ascontiguousarray(rng.normal(size=(n, d)))
    y = rng.integers(0, K, size=n).astype(np.int64)
    y[:K] = np.arange(K)
    w = rng.random(n) + 0.05
    feats = np.arange(d, dtype=np.int64)
    min_leaf = int(rng.integers(1, 3))
    return X, y, w, feats, K, min_leaf


def test_find_best_split_identical():
    rng = np.random.default_rng(41)
    for _ in range(60):
        args = _split_case(rng)
        fa, ta, ga = knp.find_best_split(*args)
        fb, tb, gb = numba_backend.find_best_split(*args)
        assert fa == fb
        assert ta == tb  # bitwise: same arithmetic on both paths
        assert ga == gb


def test_tree_apply_identical():
    rng = np.random.default_rng(42)
    # hand-built 3-node stump: feature 0, threshold 0.0
    feature = np.array([0, -1, -1], dtype=np.int64)
    threshold = np.array([0.0, 0.0, 0.0])
    left = np.array([1, -1, -1], dtype=np.int64)
    right = np.array([2, -1, -1], dtype=np.int64)
    X = np.ascontiguousarray(rng.normal(size=(100, 2)))
    a = knp.tree_apply(feature, threshold, left, right, X)
    b = numba_backend.tree_apply(feature, threshold, left, right, X)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(a, np.where(X[:, 0] <= 0.0, 1, 2))


def test_pairwise_sqdist_identical():
    rng = np.random.default_rng(43)
    for _ in range(20):
        n, m, d = rng.integers(1, 30, size=3)
        A = np.ascontiguousarray(rng.normal(size=(int(n), int(d))))
        B = np.ascontiguousarray(rng.normal(size=(int(m), int(d))))
        a = knp.pairwise_sqdist(A, B)
        b = numba_backend.pairwise_sqdist(A, B)
        np.testing.assert_array_equal(a, b)


def test_knn_select_identical():
    rng = np.random.default_rng(44)
    for _ in range(20):
        n = int(rng.integers(2, 20))
        m = int(rng.integers(2, 20))
        D = np.ascontiguousarray(rng.integers(0, 5, size=(n, m)).astype(np.float64))
        k = int(rng.integers(1, m + 1))
        ia, da = knp.knn_select(D, k)
        ib, db = numba_backend.knn_select(D, k)
        np.testing.assert_array_equal(ia, ib)
        np.testing.assert_array_equal(da, db)


_PROBE = """
import json, numpy as np
from imbal.learners import backend_name
from imbal.learners import tree as T
rng = np.random.default_rng(7)
X = rng.normal(size=(80, 4)); y = rng.integers(0, 3, size=80); y[:3] = [0, 1, 2]
t = T.fit_tree(X, y, n_classes=3)
print(json.dumps({
    "backend": backend_name(),
    "feature": t.feature.tolist(),
    "threshold": t.threshold.tolist(),
    "value": t.value.tolist(),
}))
"""


def _run_probe(disable: str) -> dict:
    env = dict(os.environ, IMBAL_DISABLE_NUMBA=disable)
    out = subprocess.run(
        [sys.executable, "-c", _PROBE], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    return json.loads(out.stdout)


def test_env_flag_switches_backend_same_tree():
    on = _run_probe("")
    off = _run_probe("1")
    assert on["backend"] == "numba"
    assert off["backend"] == "numpy"
    assert on["feature"] == off["feature"]
    assert on["threshold"] == off["threshold"]
    assert on["value"] == off["value"]
