"""Exact nearest-neighbor search: the recall oracle and the exact backend
for moderate datasets."""

from __future__ import annotations

import numpy as np

from ..embed.matrix import EmbeddingMatrix

__all__ = ["brute_force_search", "brute_force_topk"]


def brute_force_search(vectors: EmbeddingMatrix, query: np.ndarray, k: int):
    """Exact top-k (id, distance), same distance and tie rule as `search`."""
    if k < 1:
        raise ValueError("k must be >= 1")
    q = np.asarray(query, dtype=np.float64).ravel()
    if q.shape[0] != vectors.dim:
        raise ValueError(f"query dimension {q.shape[0]} != matrix dimension {vectors.dim}")
    dists = 1.0 - vectors.data.astype(np.float64) @ q
    k = min(k, vectors.count)
    part = np.argpartition(dists, k - 1)[:k] if k < vectors.count else np.arange(vectors.count)
    order = part[np.lexsort((part, dists[part]))]
    return [(int(i), max(float(dists[i]), 0.0)) for i in order]


def brute_force_topk(vectors: EmbeddingMatrix, queries: np.ndarray, k: int) -> np.ndarray:
    """Batched exact top-k ids (Q, k) for recall measurement."""
    q = np.asarray(queries, dtype=np.float64)
    data = vectors.data.astype(np.float64)
    k = min(k, vectors.count)
    out = np.empty((q.shape[0], k), dtype=np.int64)
    step = max(1, int(2e8 // max(vectors.count, 1)))
    for s in range(0, q.shape[0], step):
        block = q[s : s + step]
        dists = 1.0 - block @ data.T
        part = np.argpartition(dists, k - 1, axis=1)[:, :k] if k < vectors.count else (
            np.tile(np.arange(vectors.count), (block.shape[0], 1))
        )
        for r in range(block.shape[0]):
            ids = part[r]
            order = ids[np.lexsort((ids, dists[r, ids]))]
            out[s + r] = order
    return out
