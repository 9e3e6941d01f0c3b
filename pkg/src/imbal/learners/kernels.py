"""Backend-dispatched kernels.

Imports resolve once at module load: the numba implementations when
available and enabled, otherwise the pure-numpy fallbacks.  Both expose the
same functions with identical semantics; see ``backend.py`` for the switch.
"""

from __future__ import annotations

from . import _kernels_numpy
from .backend import USE_NUMBA, backend_name

if USE_NUMBA:
    from . import _kernels_numba as _impl
else:
    _impl = _kernels_numpy

find_best_split = _impl.find_best_split
tree_apply = _impl.tree_apply
pairwise_sqdist = _impl.pairwise_sqdist
knn_select = _impl.knn_select

GAIN_EPS = _kernels_numpy.GAIN_EPS

__all__ = [
    "find_best_split",
    "tree_apply",
    "pairwise_sqdist",
    "knn_select",
    "warmup",
    "backend_name",
    "GAIN_EPS",
]


def warmup() -> None:
    """Compile numba kernels ahead of first use; no-op on the numpy path."""
    if USE_NUMBA:
        _impl.warmup()
