#!/usr/bin/env python3
"""
Benchmark the njit kernel path against the pure-numpy mirror.

Compares:
1. find_best_split (the tree-growth hot loop)
2. pairwise_sqdist + knn_select (the resampler hot loop)
3. end-to-end tree fit via each backend

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 500 2000 8000
    python benchmarks/bench_kernels.py --output results.json
"""

import argparse
import json
import time

import numpy as np

from imbal.learners import _kernels_numpy as npk

try:
    from imbal.learners import _kernels_numba as nbk

    NUMBA_OK = True
except ImportError:
    nbk = None
    NUMBA_OK = False


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _rand_problem(n, d, k_classes, seed):
    rng = np.random.default_rng(seed)
    X = np.ascontiguousarray(rng.normal(size=(n, d)))
    y = rng.integers(0, k_classes, size=n).astype(np.int64)
    w = np.ascontiguousarray(rng.uniform(0.5, 2.0, size=n))
    return X, y, w


def bench_split(sizes, d, repeats):
    print("\nfind_best_split  (n x {} features, 3 classes)".format(d))
    print(f"{'n':>8} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 45)
    rows = []
    for n in sizes:
        X, y, w = _rand_problem(n, d, 3, seed=n)
        feats = np.arange(d, dtype=np.int64)
        t_np = _time(lambda: npk.find_best_split(X, y, w, feats, 3, 1), repeats)
        if NUMBA_OK:
            t_nb = _time(lambda: nbk.find_best_split(X, y, w, feats, 3, 1), repeats)
            same = nbk.find_best_split(X, y, w, feats, 3, 1) == npk.find_best_split(
                X, y, w, feats, 3, 1
            )
        else:
            t_nb, same = float("inf"), True
        sp = t_np / t_nb if t_nb > 0 else 0.0
        print(f"{n:>8} {t_nb*1e3:>12.3f} {t_np*1e3:>12.3f} {sp:>8.1f}x"
              + ("" if same else "   MISMATCH"))
        rows.append({"n": n, "numba_s": t_nb, "numpy_s": t_np, "speedup": sp,
                     "identical": bool(same)})
    return rows


def bench_knn(sizes, d, k, repeats):
    print(f"\npairwise_sqdist + knn_select  (k={k})")
    print(f"{'n':>8} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 45)
    rows = []
    for n in sizes:
        n_q = min(n, 500)
        X, _, _ = _rand_problem(n, d, 2, seed=n + 1)
        Q = X[:n_q]

        def run(mod):
            D = mod.pairwise_sqdist(Q, X)
            return mod.knn_select(D, k)

        t_np = _time(lambda: run(npk), repeats)
        if NUMBA_OK:
            t_nb = _time(lambda: run(nbk), repeats)
            same = np.array_equal(run(nbk)[0], run(npk)[0])
        else:
            t_nb, same = float("inf"), True
        sp = t_np / t_nb if t_nb > 0 else 0.0
        print(f"{n:>8} {t_nb*1e3:>12.3f} {t_np*1e3:>12.3f} {sp:>8.1f}x"
              + ("" if same else "   MISMATCH"))
        rows.append({"n": n, "numba_s": t_nb, "numpy_s": t_np, "speedup": sp,
                     "identical": bool(same)})
    return rows


def bench_tree_fit(sizes, d, repeats):
    # end-to-end: flip the backend by reloading the dispatch module
    import importlib
    import os

    from imbal.learners import tree as tree_mod
    from imbal.learners import kernels as kernels_mod

    print("\nfit_tree end-to-end (unpruned, 2 classes)")
    print(f"{'n':>8} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 45)
    rows = []

    def fit_with(disable, n):
        os.environ["IMBAL_DISABLE_NUMBA"] = "1" if disable else "0"
        import imbal.learners.backend as backend_mod

        importlib.reload(backend_mod)
        importlib.reload(kernels_mod)
        importlib.reload(tree_mod)
        X, y, _ = _rand_problem(n, d, 2, seed=n + 2)
        kernels_mod.warmup()
        return _time(lambda: tree_mod.fit_tree(X, y), repeats)

    for n in sizes:
        t_np = fit_with(True, n)
        t_nb = fit_with(False, n) if NUMBA_OK else float("inf")
        sp = t_np / t_nb if t_nb > 0 else 0.0
        print(f"{n:>8} {t_nb*1e3:>12.3f} {t_np*1e3:>12.3f} {sp:>8.1f}x")
        rows.append({"n": n, "numba_s": t_nb, "numpy_s": t_np, "speedup": sp})

    os.environ.pop("IMBAL_DISABLE_NUMBA", None)
    import imbal.learners.backend as backend_mod

    importlib.reload(backend_mod)
    importlib.reload(kernels_mod)
    importlib.reload(tree_mod)
    return rows


def main():
    parser = argparse.ArgumentParser(description="Benchmark tree/knn kernels")
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[500, 2000, 8000])
    parser.add_argument("--features", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--output", type=str, default=None)
    args = parser.parse_args()

    print("=" * 45)
    print("KERNEL BACKEND BENCHMARK")
    print("=" * 45)
    print(f"numba available: {NUMBA_OK}")
    print(f"sizes: {args.sizes}, d={args.features}")

    if NUMBA_OK:
        print("\nwarming up JIT...")
        nbk.warmup()

    results = {
        "numba_available": NUMBA_OK,
        "sizes": args.sizes,
        "split": bench_split(args.sizes, args.features, args.repeats),
        "knn": bench_knn(args.sizes, args.features, 5, args.repeats),
        "tree_fit": bench_tree_fit(args.sizes, args.features, args.repeats),
    }

    if NUMBA_OK:
        avg = np.mean([r["speedup"] for r in results["split"]])
        print(f"\nmean find_best_split speedup: {avg:.1f}x")
        if not all(r["identical"] for r in results["split"] + results["knn"]):
            print("WARNING: backend outputs diverged — investigate before trusting timings")

    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"results saved to {args.output}")


if __name__ == "__main__":
    main()
