"""ef_search calibration against the exact oracle: doubling then binary
search for the smallest ef meeting the recall target, with single-threaded
latency measurement (mean and p99)."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .hnsw import HnswIndex

__all__ = ["CalibrationTarget", "CalibrationReport", "calibrate_ef", "measure_recall"]


@dataclass
class CalibrationTarget:
    target_recall: float = 0.99
    latency_budget_ms: float = 10.0
    recall_k: int = 10

    def __post_init__(self):
        if not (0.0 < self.target_recall <= 1.0):
            raise ValueError("target_recall must be in (0, 1]")
        if self.latency_budget_ms <= 0:
            raise ValueError("latency_budget_ms must be positive")


@dataclass
class CalibrationReport:
    ef_search: int
    recall: float
    mean_ms: float
    p99_ms: float
    feasible: bool
    note: str = ""


def measure_recall(index: HnswIndex, queries: np.ndarray, oracle_ids: np.ndarray, ef: int) -> float:
    k = oracle_ids.shape[1]
    hits = 0
    for qi in range(queries.shape[0]):
        got = {i for i, _ in index.search(queries[qi], k, ef_search=ef)}
        hits += len(got.intersection(oracle_ids[qi].tolist()))
    return hits / (queries.shape[0] * k)


def _measure_latency(index: HnswIndex, queries: np.ndarray, ef: int, k: int):
    lat = np.empty(queries.shape[0])
    for qi in range(queries.shape[0]):
        t0 = time.perf_counter()
        index.search(queries[qi], k, ef_search=ef)
        lat[qi] = (time.perf_counter() - t0) * 1000.0
    return float(lat.mean()), float(np.percentile(lat, 99))


def calibrate_ef(
    index: HnswIndex,
    sample_queries: np.ndarray,
    oracle_ids: np.ndarray,
    target: CalibrationTarget | None = None,
) -> CalibrationReport:
    """Smallest ef_search with measured recall >= target; sets index.params.ef_search."""
    target = target or CalibrationTarget()
    queries = np.asarray(sample_queries, dtype=np.float64)
    if queries.shape[0] < 100:
        raise ValueError("calibration needs at least 100 sample queries")
    if oracle_ids.shape[0] != queries.shape[0] or oracle_ids.shape[1] != target.recall_k:
        raise ValueError("oracle results must be (n_queries, recall_k)")

    n = index.vectors.count
    recalls: dict[int, float] = {}

    def recall_at(ef: int) -> float:
        if ef not in recalls:
            recalls[ef] = measure_recall(index, queries, oracle_ids, ef)
        return recalls[ef]

    ef = max(target.recall_k, 16)
    while recall_at(ef) < target.target_recall and ef < n:
        ef = min(ef * 2, n)
    if recall_at(ef) < target.target_recall:
        mean_ms, p99_ms = _measure_latency(index, queries, ef, target.recall_k)
        return CalibrationReport(
            ef_search=ef, recall=recall_at(ef), mean_ms=mean_ms, p99_ms=p99_ms,
            feasible=False,
            note=f"target unreachable: max achievable recall {recall_at(ef):.4f} at ef={ef}",
        )
    lo = max(ef // 2, target.recall_k)
    hi = ef
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if recall_at(mid) >= target.target_recall:
            hi = mid
        else:
            lo = mid
    chosen = hi
    mean_ms, p99_ms = _measure_latency(index, queries, chosen, target.recall_k)
    feasible = mean_ms < target.latency_budget_ms
    note = "" if feasible else (
        f"latency budget exceeded: mean {mean_ms:.2f} ms > {target.latency_budget_ms} ms"
    )
    index.params.ef_search = chosen
    return CalibrationReport(
        ef_search=chosen, recall=recall_at(chosen), mean_ms=mean_ms,
        p99_ms=p99_ms, feasible=feasible, note=note,
    )
