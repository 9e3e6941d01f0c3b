"""Brute-force exact k-nearest-neighbor queries.

Euclidean metric, neighbors ordered by (distance, index) so results are
fully deterministic under distance ties.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidArgumentError
from . import kernels

__all__ = ["knn_query"]


def knn_query(
    index_points: np.ndarray,
    query_points: np.ndarray,
    k: int,
    exclude_self: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """k nearest index points for each query point.

    With ``exclude_self=True`` the two arrays must be the same set in the
    same order; each query then skips its own position.  Returns neighbor
    indices (n_query, k) and Euclidean distances, both sorted by
    (distance, index) ascending.
    """
    A = np.ascontiguousarray(np.asarray(query_points, dtype=np.float64))
    B = np.ascontiguousarray(np.asarray(index_points, dtype=np.float64))
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise InvalidArgumentError("query and index points must share width")
    m = B.shape[0]
    available = m - 1 if exclude_self else m
    if k < 1 or k > available:
        raise InvalidArgumentError(
            f"k={k} out of range for {m} index points"
            + (" (self excluded)" if exclude_self else "")
        )
    sq = kernels.pairwise_sqdist(A, B)
    if exclude_self:
        if A.shape[0] != m:
            raise InvalidArgumentError("exclude_self requires query == index set")
        np.fill_diagonal(sq, np.inf)
    idx, sqd = kernels.knn_select(sq, k)
    return idx, np.sqrt(sqd)
