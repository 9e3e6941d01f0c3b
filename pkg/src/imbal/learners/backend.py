"""Kernel backend selection.

Hot numeric loops (tree split search, pairwise distances, tree traversal)
have two implementations: a numba ``@njit`` path and a pure-numpy path with
identical float semantics.  The numba path is used when numba imports
cleanly and the ``IMBAL_DISABLE_NUMBA`` environment variable is unset; set
it to ``1`` (or ``true``/``yes``) to force the numpy path, e.g. on platforms
where JIT compilation is unavailable or unwanted.
"""

from __future__ import annotations

import os

__all__ = ["HAVE_NUMBA", "NUMBA_DISABLED", "USE_NUMBA", "backend_name"]

NUMBA_DISABLED = os.environ.get("IMBAL_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
