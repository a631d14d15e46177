"""Index persistence: versioned little-endian binary with CRC-64 trailer.

Layout: magic "HNSW1"; u32 version; params block (m, m0, ef_construction,
ef_search u32; rng_seed u64; level_lambda f64); u32 dim; u64 count; u64
entry_point; u32 max_level; i32 levels[count]; per level 0..max_level the
length-prefixed adjacency rows (u32 len, len*u32 ids) for every node; the
float32 vector payload; length-prefixed UTF-8 id lines; CRC-64/XZ of all
preceding bytes.
"""

from __future__ import annotations

import struct

import numpy as np

from ..embed.matrix import EmbeddingMatrix
from .hnsw import HnswIndex, HnswParams

__all__ = ["save_index", "load_index", "IndexFileError", "crc64"]

MAGIC = b"HNSW1"
VERSION = 1

_CRC64_POLY = 0xC96C5795D7870F42  # CRC-64/XZ, reflected


def _crc_table():
    table = []
    for b in range(256):
        crc = b
        for _ in range(8):
            crc = (crc >> 1) ^ _CRC64_POLY if crc & 1 else crc >> 1
        table.append(crc)
    return table


_TABLE = _crc_table()


def crc64(data: bytes, crc: int = 0) -> int:
    crc ^= 0xFFFFFFFFFFFFFFFF
    for byte in data:
        crc = _TABLE[(crc ^ byte) & 0xFF] ^ (crc >> 8)
    return crc ^ 0xFFFFFFFFFFFFFFFF


class IndexFileError(ValueError):
    pass


def save_index(index: HnswIndex, path: str) -> None:
    if not index.frozen:
        raise ValueError("only frozen indexes are persisted")
    p = index.params
    parts = [MAGIC, struct.pack("<I", VERSION)]
    parts.append(struct.pack("<IIIIQd", p.m, p.m0, p.ef_construction,
                             p.ef_search, p.rng_seed, p.level_lambda))
    n = index.vectors.count
    parts.append(struct.pack("<IQQI", index.vectors.dim, n,
                             index.entry_point, index.max_level))
    parts.append(np.ascontiguousarray(index.levels, dtype="<i4").tobytes())
    for level in range(index.max_level + 1):
        rows = index.links[level]
        for node in range(n):
            cnt = int(rows[node, 0])
            parts.append(struct.pack("<I", cnt))
            parts.append(rows[node, 1 : 1 + cnt].astype("<u4").tobytes())
    parts.append(np.ascontiguousarray(index.vectors.data, dtype="<f4").tobytes())
    ids_blob = "\n".join(index.vectors.ids).encode("utf-8")
    parts.append(struct.pack("<Q", len(ids_blob)))
    parts.append(ids_blob)
    body = b"".join(parts)
    with open(path, "wb") as fh:
        fh.write(body)
        fh.write(struct.pack("<Q", crc64(body)))


def load_index(path: str, kernel_backend: str | None = None) -> HnswIndex:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(MAGIC) + 4 + 8:
        raise IndexFileError("bad magic: file too short")
    if blob[: len(MAGIC)] != MAGIC:
        raise IndexFileError("bad magic")
    body, trailer = blob[:-8], blob[-8:]
    (stored_crc,) = struct.unpack("<Q", trailer)
    if crc64(body) != stored_crc:
        raise IndexFileError("checksum failure")
    off = len(MAGIC)
    (version,) = struct.unpack_from("<I", body, off)
    off += 4
    if version != VERSION:
        raise IndexFileError(f"unsupported version {version}")
    m, m0, ef_c, ef_s, seed, lam = struct.unpack_from("<IIIIQd", body, off)
    off += struct.calcsize("<IIIIQd")
    dim, n, entry, max_level = struct.unpack_from("<IQQI", body, off)
    off += struct.calcsize("<IQQI")
    levels = np.frombuffer(body, dtype="<i4", count=n, offset=off).copy()
    off += 4 * n
    params = HnswParams(m=m, m0=m0, ef_construction=ef_c, ef_search=ef_s,
                        level_lambda=lam, rng_seed=seed)
    links = []
    for level in range(max_level + 1):
        cap = m0 if level == 0 else m
        rows = np.zeros((n, cap + 1), dtype=np.int32)
        for node in range(n):
            (cnt,) = struct.unpack_from("<I", body, off)
            off += 4
            if cnt > cap:
                raise IndexFileError(f"adjacency row exceeds capacity at node {node}")
            ids = np.frombuffer(body, dtype="<u4", count=cnt, offset=off)
            off += 4 * cnt
            rows[node, 0] = cnt
            rows[node, 1 : 1 + cnt] = ids
        links.append(rows)
    vec = np.frombuffer(body, dtype="<f4", count=n * dim, offset=off).reshape(n, dim).copy()
    off += 4 * n * dim
    (ids_len,) = struct.unpack_from("<Q", body, off)
    off += 8
    ids_blob = body[off : off + ids_len]
    if len(ids_blob) != ids_len:
        raise IndexFileError("truncated id block")
    ids = ids_blob.decode("utf-8").split("\n") if ids_len else []
    matrix = EmbeddingMatrix(data=vec, ids=ids, normalized=True)
    index = HnswIndex(params=params, vectors=matrix, kernel_backend=kernel_backend)
    index.levels = levels
    index.links = links
    index.entry_point = int(entry)
    index.max_level = int(max_level)
    index.frozen = True
    return index
