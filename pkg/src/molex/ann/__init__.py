"""Approximate nearest-neighbor search: HNSW index, exact oracle,
calibration, persistence."""

from .brute import brute_force_search, brute_force_topk
from .calibrate import CalibrationReport, CalibrationTarget, calibrate_ef, measure_recall
from .hnsw import HnswIndex, HnswParams, build_index
from .io import IndexFileError, crc64, load_index, save_index

__all__ = [
    "CalibrationReport",
    "CalibrationTarget",
    "HnswIndex",
    "HnswParams",
    "IndexFileError",
    "brute_force_search",
    "brute_force_topk",
    "build_index",
    "calibrate_ef",
    "crc64",
    "load_index",
    "measure_recall",
    "save_index",
]
