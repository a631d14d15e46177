"""Loaders for the vendored parameter tables (TSV + recorded checksums)."""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

_DATA_PKG = "molex.descriptors.data"


def _read(name: str) -> str:
    return resources.files(_DATA_PKG).joinpath(name).read_text(encoding="utf-8")


def table_rows(name: str) -> list[list[str]]:
    rows = []
    for line in _read(name).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def table_sha256(name: str) -> str:
    return hashlib.sha256(_read(name).encode("utf-8")).hexdigest()


def recorded_checksums() -> dict[str, str]:
    out = {}
    for line in _read("CHECKSUMS").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        digest, name = line.split()
        out[name] = digest
    return out


@lru_cache(maxsize=1)
def atomic_masses() -> dict[str, float]:
    return {el: float(m) for el, m in table_rows("atomic_masses.tsv")}


@lru_cache(maxsize=1)
def isotope_masses() -> dict[tuple[str, int], float]:
    return {
        (el, int(num)): float(m) for el, num, m in table_rows("isotope_masses.tsv")
    }


@lru_cache(maxsize=1)
def crippen_contributions() -> dict[str, float]:
    return {t: float(v) for t, v in table_rows("crippen.tsv")}


@lru_cache(maxsize=1)
def tpsa_contributions() -> dict[str, float]:
    return {k: float(v) for k, v in table_rows("tpsa.tsv")}


@lru_cache(maxsize=1)
def qed_ads_parameters() -> dict[str, dict[str, float]]:
    out = {}
    for prop, a, b, c, d, e, f, dmax, weight in table_rows("qed_ads.tsv"):
        out[prop] = {
            "a": float(a), "b": float(b), "c": float(c), "d": float(d),
            "e": float(e), "f": float(f), "dmax": float(dmax), "weight": float(weight),
        }
    return out


@lru_cache(maxsize=1)
def qed_alert_patterns() -> list[tuple[str, str]]:
    return [(name, pat) for name, pat in table_rows("qed_alerts.tsv")]
