"""Embeddings: file transport, deterministic surrogate, DCT reduction."""

from .dct import dct_matrix, dct_reduce, reduce_matrix
from .fileio import EmbeddingFileError, load_embedding_file, sidecar_path, write_embedding_file
from .matrix import EmbedderConfig, EmbeddingMatrix, l2_normalize
from .surrogate import surrogate_embed, surrogate_matrix

__all__ = [
    "EmbedderConfig",
    "EmbeddingFileError",
    "EmbeddingMatrix",
    "dct_matrix",
    "dct_reduce",
    "l2_normalize",
    "load_embedding_file",
    "reduce_matrix",
    "sidecar_path",
    "surrogate_embed",
    "surrogate_matrix",
    "write_embedding_file",
]
