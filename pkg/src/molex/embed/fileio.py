"""Embedding file transport.

Bit-exact format: bytes 0-3 magic "MOLV"; u32 LE version=1; u32 LE dim;
u64 LE count; then count*dim float32 LE row-major. The sidecar lives at
``<path>.smi`` (suffix appended), one canonical SMILES per line, line i
bound to row i.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .matrix import EmbeddingMatrix

MAGIC = b"MOLV"
VERSION = 1
_HEADER = struct.Struct("<4sIIQ")


class EmbeddingFileError(ValueError):
    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


def sidecar_path(path: str) -> str:
    return f"{path}.smi"


def write_embedding_file(path: str, matrix: EmbeddingMatrix) -> None:
    payload = np.ascontiguousarray(matrix.data, dtype="<f4").tobytes()
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, matrix.dim, matrix.count))
        fh.write(payload)
    with open(sidecar_path(path), "w", encoding="utf-8") as fh:
        for smi in matrix.ids:
            fh.write(smi + "\n")


def load_embedding_file(path: str, require_sidecar: bool = True) -> EmbeddingMatrix:
    size = os.path.getsize(path)
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) < _HEADER.size:
            raise EmbeddingFileError("truncated header", len(head))
        magic, version, dim, count = _HEADER.unpack(head)
        if magic != MAGIC:
            raise EmbeddingFileError("bad magic", 0)
        if version != VERSION:
            raise EmbeddingFileError(f"unsupported version {version}", 4)
        expected = count * dim * 4
        payload = fh.read(expected)
        if len(payload) < expected:
            raise EmbeddingFileError("truncated payload", _HEADER.size + len(payload))
        if fh.read(1):
            raise EmbeddingFileError("trailing bytes after payload", _HEADER.size + expected)
    data = np.frombuffer(payload, dtype="<f4").reshape(count, dim).copy()
    ids: list[str] = []
    side = sidecar_path(path)
    if os.path.exists(side):
        with open(side, encoding="utf-8") as fh:
            ids = [line.rstrip("\n") for line in fh if line.strip()]
        if len(ids) != count:
            raise EmbeddingFileError(
                f"dim/count mismatch: sidecar has {len(ids)} ids for {count} rows", size
            )
    elif require_sidecar:
        raise EmbeddingFileError(f"missing sidecar {side}", size)
    return EmbeddingMatrix(data=data, ids=ids)
