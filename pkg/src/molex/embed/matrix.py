"""Embedding matrix container and pipeline configuration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class EmbedderConfig:
    dim_full: int = 768
    dim_reduced: int = 128
    source: str = "surrogate"  # "file" | "surrogate"
    surrogate_seed: int = 24601

    def __post_init__(self):
        if not (0 < self.dim_reduced <= self.dim_full):
            raise ValueError("need 0 < dim_reduced <= dim_full")


@dataclass
class EmbeddingMatrix:
    data: np.ndarray  # float32, row-major (count, dim)
    ids: list[str] = field(default_factory=list)
    normalized: bool = False

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.float32)
        if self.data.ndim != 2:
            raise ValueError("embedding data must be 2-D")
        if not np.isfinite(self.data).all():
            raise ValueError("embedding rows must be finite")
        if not self.ids:
            self.ids = [str(i) for i in range(self.data.shape[0])]
        if len(self.ids) != self.data.shape[0]:
            raise ValueError("ids length must equal row count")
        if self.normalized:
            norms = np.linalg.norm(self.data.astype(np.float64), axis=1)
            if self.count and not np.allclose(norms, 1.0, atol=1e-5):
                raise ValueError("normalized flag set but rows are not unit length")

    @property
    def count(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def row(self, i: int) -> np.ndarray:
        return self.data[i]


def l2_normalize(matrix: np.ndarray) -> np.ndarray:
    """Row-wise unit normalization in float64, returned as float32."""
    m = np.asarray(matrix, dtype=np.float64)
    norms = np.linalg.norm(m, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("cannot normalize zero rows")
    return np.ascontiguousarray(m / norms, dtype=np.float32)
