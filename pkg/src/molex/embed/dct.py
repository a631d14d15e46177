"""Orthonormal DCT-II dimensionality reduction.

Applied per vector: the first dim_reduced coefficients of the orthonormal
type-II discrete cosine transform. Linear, energy-contracting, computed in
float64 against a cached basis and cast back to the input dtype.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ["dct_matrix", "dct_reduce", "reduce_matrix"]


@lru_cache(maxsize=8)
def dct_matrix(dim_full: int, dim_reduced: int) -> np.ndarray:
    """(dim_reduced, dim_full) orthonormal DCT-II basis rows."""
    n = np.arange(dim_full)
    k = np.arange(dim_reduced).reshape(-1, 1)
    basis = np.cos(math.pi * (2.0 * n + 1.0) * k / (2.0 * dim_full))
    basis[0] *= math.sqrt(1.0 / dim_full)
    basis[1:] *= math.sqrt(2.0 / dim_full)
    return np.ascontiguousarray(basis)


def dct_reduce(v: np.ndarray, dim_reduced: int) -> np.ndarray:
    """Truncated orthonormal DCT-II of a vector (or a batch of rows)."""
    arr = np.asarray(v)
    if not np.isfinite(arr).all():
        raise ValueError("input contains non-finite values")
    dim_full = arr.shape[-1]
    if not (0 < dim_reduced <= dim_full):
        raise ValueError("need 0 < dim_reduced <= input dimension")
    basis = dct_matrix(dim_full, dim_reduced)
    out = arr.astype(np.float64) @ basis.T
    return out.astype(arr.dtype) if arr.dtype.kind == "f" else out


def reduce_matrix(data: np.ndarray, dim_reduced: int) -> np.ndarray:
    """DCT-reduce rows and L2-normalize, ready for indexing (float32)."""
    from .matrix import l2_normalize

    reduced = np.asarray(data, dtype=np.float64) @ dct_matrix(data.shape[1], dim_reduced).T
    return l2_normalize(reduced)
