"""From-scratch HNSW index over L2-normalized embeddings.

Multi-layer navigable small-world graph: node levels are drawn as
floor(-ln(U) * level_lambda), inserts beam-search each layer with
ef_construction and link through the distance-diversity heuristic. Layer
adjacency is kept strictly mutual (an eviction removes both directions),
so the layer-0 graph is symmetric at all times; a final connectivity pass
patches any isolated pocket. Distance is cosine distance 1 - <q, v> on
unit vectors, ties broken toward the lower id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._kernels import get_backend
from ..embed.matrix import EmbeddingMatrix

__all__ = ["HnswParams", "HnswIndex", "build_index"]


@dataclass
class HnswParams:
    m: int = 16
    m0: int = 32
    ef_construction: int = 200
    ef_search: int = 64  # overwritten by calibration
    level_lambda: float = 0.0  # 0 -> 1/ln(m)
    rng_seed: int = 1337

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be >= 2")
        if self.ef_construction < self.m:
            raise ValueError("ef_construction must be >= m")
        if self.level_lambda <= 0.0:
            self.level_lambda = 1.0 / math.log(self.m)


@dataclass
class HnswIndex:
    params: HnswParams
    vectors: EmbeddingMatrix
    levels: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int32))
    links: list[np.ndarray] = field(default_factory=list)  # per level (N, cap+1) int32
    entry_point: int = -1
    max_level: int = -1
    frozen: bool = False
    kernel_backend: str | None = None

    def __post_init__(self):
        self._search_layer, self._select, self._link = get_backend(self.kernel_backend)
        n = self.vectors.count
        self._visit_tag = np.zeros(n, dtype=np.int64)
        self._epoch = 0

    # --- construction ------------------------------------------------------

    def _cap(self, level: int) -> int:
        return self.params.m0 if level == 0 else self.params.m

    def _ensure_level_arrays(self, level: int) -> None:
        n = self.vectors.count
        while len(self.links) <= level:
            lv = len(self.links)
            self.links.append(np.zeros((n, self._cap(lv) + 1), dtype=np.int32))

    def _beam(self, level: int, q64: np.ndarray, entry: int, ef: int):
        self._epoch += 1
        return self._search_layer(
            self.vectors.data, self.links[level], q64, entry,
            ef, self._visit_tag, self._epoch,
        )

    def _descend(self, q64: np.ndarray, from_level: int, to_level: int, entry: int) -> int:
        for lc in range(from_level, to_level, -1):
            ids, _ = self._beam(lc, q64, entry, 1)
            entry = int(ids[0])
        return entry

    def insert(self, i: int, level: int) -> None:
        q64 = self.vectors.data[i].astype(np.float64)
        self._ensure_level_arrays(level)
        if self.entry_point < 0:
            self.entry_point = i
            self.max_level = level
            return
        entry = self.entry_point
        if self.max_level > level:
            entry = self._descend(q64, self.max_level, level, entry)
        for lc in range(min(level, self.max_level), -1, -1):
            ids, dists = self._beam(lc, q64, entry, self.params.ef_construction)
            cap = self._cap(lc)
            selected = self._select(self.vectors.data, ids, dists, min(cap, len(ids)))
            self._set_row(lc, i, [int(s) for s in selected])
            for s in selected:
                self._link(self.vectors.data, self.links[lc], i, int(s), cap)
            entry = int(ids[0])
        if level > self.max_level:
            self.max_level = level
            self.entry_point = i

    def _row_ids(self, level: int, node: int) -> np.ndarray:
        row = self.links[level][node]
        return row[1 : 1 + row[0]]

    def _set_row(self, level: int, node: int, ids) -> None:
        row = self.links[level][node]
        row[0] = len(ids)
        row[1 : 1 + len(ids)] = ids

    def _append(self, level: int, node: int, other: int) -> None:
        row = self.links[level][node]
        row[1 + row[0]] = other
        row[0] += 1

    def _remove(self, level: int, node: int, other: int) -> None:
        ids = [x for x in self._row_ids(level, node).tolist() if x != other]
        self._set_row(level, node, ids)

    def _link_mutual(self, level: int, new: int, nbr: int) -> None:
        cap = self._cap(level)
        self._append(level, new, nbr)
        row = self._row_ids(level, nbr)
        if len(row) < cap:
            self._append(level, nbr, new)
            return
        # full: re-select nbr's neighborhood from current links + the newcomer
        cand = np.concatenate([row.astype(np.int64), [new]])
        base = self.vectors.data[nbr].astype(np.float64)
        dists = 1.0 - self.vectors.data[cand].astype(np.float64) @ base
        order = np.lexsort((cand, dists))
        cand, dists = cand[order], dists[order]
        keep = self._select(self.vectors.data, cand, dists, cap)
        keep_set = set(int(x) for x in keep)
        for evicted in set(int(x) for x in cand) - keep_set:
            # strict mutual links: drop the reverse edge with the evictee
            self._remove(level, evicted, nbr)
        self._set_row(level, nbr, [int(x) for x in keep])

    def freeze(self) -> None:
        self._repair_connectivity()
        self.frozen = True

    def _repair_connectivity(self) -> None:
        n = self.vectors.count
        if n < 2 or not self.links:
            return
        links0 = self.links[0]
        while True:
            seen = np.zeros(n, dtype=bool)
            stack = [self.entry_point]
            seen[self.entry_point] = True
            while stack:
                v = stack.pop()
                row = links0[v]
                for u in row[1 : 1 + row[0]]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(int(u))
            if seen.all():
                return
            orphan_ids = np.where(~seen)[0]
            main_ids = np.where(seen)[0]
            # nearest (orphan, main) pair by brute force, then mutual link
            ov = self.vectors.data[orphan_ids].astype(np.float64)
            mv = self.vectors.data[main_ids].astype(np.float64)
            d = 1.0 - ov @ mv.T
            oi, mi = np.unravel_index(np.argmin(d), d.shape)
            a, b = int(orphan_ids[oi]), int(main_ids[mi])
            cap = self._cap(0)
            for node, other in ((a, b), (b, a)):
                ids = self._row_ids(0, node).tolist()
                if len(ids) >= cap:
                    worst = ids[-1]
                    self._remove(0, node, worst)
                    self._remove(0, worst, node)
                self._append(0, node, other)

    # --- queries -------------------------------------------------------------

    def search(self, query: np.ndarray, k: int, ef_search: int | None = None):
        """Top-k (id, distance) pairs, ascending distance, ties by lower id."""
        if not self.frozen:
            raise RuntimeError("index must be frozen before searching")
        if k < 1:
            raise ValueError("k must be >= 1")
        ef = ef_search if ef_search is not None else self.params.ef_search
        ef = max(ef, k)
        q = np.asarray(query, dtype=np.float64).ravel()
        if q.shape[0] != self.vectors.dim:
            raise ValueError(
                f"query dimension {q.shape[0]} != index dimension {self.vectors.dim}"
            )
        entry = self._descend(q, self.max_level, 0, self.entry_point)
        ids, dists = self._beam(0, q, entry, ef)
        k = min(k, self.vectors.count)
        return [(int(i), max(float(d), 0.0)) for i, d in zip(ids[:k], dists[:k])]


def draw_levels(n: int, params: HnswParams) -> np.ndarray:
    rng = np.random.default_rng(params.rng_seed)
    u = rng.random(n)
    return np.floor(-np.log(u) * params.level_lambda).astype(np.int32)


def build_index(
    vectors: EmbeddingMatrix,
    params: HnswParams | None = None,
    kernel_backend: str | None = None,
) -> HnswIndex:
    """Bulk-build a frozen index; deterministic for a fixed rng_seed."""
    params = params or HnswParams()
    if vectors.count == 0:
        raise ValueError("cannot index an empty matrix")
    norms = np.linalg.norm(vectors.data.astype(np.float64), axis=1)
    if not np.allclose(norms, 1.0, atol=1e-4):
        raise ValueError("index vectors must be L2-normalized")
    index = HnswIndex(params=params, vectors=vectors, kernel_backend=kernel_backend)
    levels = draw_levels(vectors.count, params)
    index.levels = levels
    index._ensure_level_arrays(int(levels.max(initial=0)))
    for i in range(vectors.count):
        index.insert(i, int(levels[i]))
    index.freeze()
    return index
