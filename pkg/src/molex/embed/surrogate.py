"""Deterministic surrogate embeddings from canonical SMILES strings.

Character n-grams (lengths 1..8) are feature-hashed into dim_full bins
with +/-1 sign hashing and the result L2-normalized. Hashing is a seeded
polynomial rolling hash with a splitmix64 finalizer, fully vectorized, so
identical strings map to identical vectors across processes for a fixed
seed. A stand-in for externally computed transformer embeddings; real
embedding files take priority when provided.
"""

from __future__ import annotations

import numpy as np

from .matrix import EmbedderConfig, EmbeddingMatrix, l2_normalize

__all__ = ["surrogate_embed", "surrogate_matrix"]

_MAX_NGRAM = 8


def _splitmix64(z: np.ndarray) -> np.ndarray:
    z = (z + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    z = ((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)).astype(np.uint64)
    z = ((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)).astype(np.uint64)
    return (z ^ (z >> np.uint64(31))).astype(np.uint64)


def _seed_constants(seed: int) -> tuple[np.uint64, np.uint64]:
    s = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    base = _splitmix64(np.array([s], dtype=np.uint64))[0] | np.uint64(1)  # odd
    mix = _splitmix64(np.array([s ^ np.uint64(0xA5A5A5A5A5A5A5A5)], dtype=np.uint64))[0]
    return base, mix


def surrogate_embed(canonical_smiles: str, cfg: EmbedderConfig | None = None) -> np.ndarray:
    """Unit-norm float32 vector of length cfg.dim_full."""
    cfg = cfg or EmbedderConfig()
    if not canonical_smiles:
        raise ValueError("empty string cannot be embedded")
    base, mix = _seed_constants(cfg.surrogate_seed)
    dim = np.uint64(cfg.dim_full)

    codes = np.frombuffer(canonical_smiles.encode("utf-8"), dtype=np.uint8).astype(np.uint64)
    n = len(codes)
    with np.errstate(over="ignore"):
        # prefix powers and inverse-weighted prefix sums for O(1) range hashes
        pow_base = np.ones(n, dtype=np.uint64)
        if n > 1:
            np.multiply.accumulate(np.full(n - 1, base, dtype=np.uint64), out=pow_base[1:])
        inv = np.uint64(pow(int(base), -1, 1 << 64))
        pow_inv = np.ones(n, dtype=np.uint64)
        if n > 1:
            np.multiply.accumulate(np.full(n - 1, inv, dtype=np.uint64), out=pow_inv[1:], axis=0)
        weighted = (codes * pow_inv).astype(np.uint64)
        prefix = np.zeros(n + 1, dtype=np.uint64)
        np.cumsum(weighted, out=prefix[1:])

        vec = np.zeros(cfg.dim_full, dtype=np.float64)
        for length in range(1, min(_MAX_NGRAM, n) + 1):
            starts = np.arange(0, n - length + 1)
            ends = starts + length
            # hash(start..end) = pow_base[end-1] * (prefix[end] - prefix[start])
            h = (pow_base[ends - 1] * (prefix[ends] - prefix[starts])).astype(np.uint64)
            h ^= np.uint64(length) * np.uint64(0xC2B2AE3D27D4EB4F)
            h ^= mix
            f = _splitmix64(h)
            bins = (f % dim).astype(np.int64)
            signs = np.where((f >> np.uint64(63)) & np.uint64(1), -1.0, 1.0)
            np.add.at(vec, bins, signs)
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise ValueError("degenerate embedding (hash cancellation)")
    return (vec / norm).astype(np.float32)


def surrogate_matrix(canonical_smiles: list[str], cfg: EmbedderConfig | None = None) -> EmbeddingMatrix:
    cfg = cfg or EmbedderConfig()
    data = np.empty((len(canonical_smiles), cfg.dim_full), dtype=np.float32)
    for i, smi in enumerate(canonical_smiles):
        data[i] = surrogate_embed(smi, cfg)
    return EmbeddingMatrix(data=data, ids=list(canonical_smiles), normalized=True)
