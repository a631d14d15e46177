"""Maximal common subgraph via budgeted connected backtracking.

Grows compatible atom-pair mappings one common bond at a time, keeping the
best (atom count, bond count) seen. The search is exhaustive when it
finishes inside the time budget (`optimal=True`); on expiry the best
mapping found so far is returned with `optimal=False`. Iteration order is
fixed, so results are deterministic for a given budget outcome.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graph import MolGraph

__all__ = ["McsResult", "max_common_subgraph"]


@dataclass(frozen=True)
class McsResult:
    mapping: list[tuple[int, int]]
    size_atoms: int
    size_bonds: int
    optimal: bool


class _Expired(Exception):
    pass


def max_common_subgraph(a: MolGraph, b: MolGraph, budget_ms: int = 500) -> McsResult:
    """Best connected common subgraph between two molecules.

    Atoms are compatible when element and aromaticity agree; a bond present
    between mapped atoms in both molecules must agree on order and counts
    toward `size_bonds`. Connectivity is through those common bonds.
    """
    if not a.atoms or not b.atoms:
        raise ValueError("both molecules must be non-empty")
    if budget_ms <= 0:
        raise ValueError("budget_ms must be positive")
    deadline = time.monotonic() + budget_ms / 1000.0

    na = len(a.atoms)
    compat = [
        [j for j in range(len(b.atoms)) if _atoms_compatible(a, i, b, j)]
        for i in range(na)
    ]

    best: dict = {"atoms": 0, "bonds": 0, "mapping": []}
    state_a: dict[int, int] = {}
    state_b: set[int] = set()

    def record(bonds: int) -> None:
        if (len(state_a), bonds) > (best["atoms"], best["bonds"]):
            best["atoms"] = len(state_a)
            best["bonds"] = bonds
            best["mapping"] = sorted(state_a.items())

    def frontier(seed_i: int) -> list[tuple[int, int]]:
        """Compatible unmapped pairs adjacent to the mapping via a common bond."""
        out = []
        for i, j in state_a.items():
            for ni, bi in a.adjacency[i]:
                if ni in state_a or ni < seed_i:
                    continue
                order = a.bonds[bi].order
                for nj, bj in b.adjacency[j]:
                    if nj in state_b:
                        continue
                    if b.bonds[bj].order != order:
                        continue
                    if nj in compat_set[ni]:
                        out.append((ni, nj))
        return sorted(set(out))

    compat_set = [set(c) for c in compat]

    def consistent(i: int, j: int) -> tuple[bool, int]:
        """Check bond-order agreement with the mapping; count new common bonds."""
        new_bonds = 0
        for i2, j2 in state_a.items():
            ab = a.bond_between(i, i2)
            bb = b.bond_between(j, j2)
            if ab is not None and bb is not None:
                if ab.order != bb.order:
                    return False, 0
                new_bonds += 1
        return True, new_bonds

    def extend(seed_i: int, bonds: int, excluded: frozenset) -> None:
        record(bonds)
        if time.monotonic() > deadline:
            raise _Expired()
        cands = [p for p in frontier(seed_i) if p not in excluded]
        # bound: mapping every distinct frontier atom still cannot beat best
        distinct = len({i for i, _ in cands})
        if len(state_a) + distinct < best["atoms"]:
            return
        seen_here: set = set()
        for pair in cands:
            i, j = pair
            ok, nb = consistent(i, j)
            if not ok:
                continue
            state_a[i] = j
            state_b.add(j)
            extend(seed_i, bonds + nb, excluded | seen_here)
            del state_a[i]
            state_b.discard(j)
            seen_here.add(pair)

    optimal = True
    try:
        for i in range(na):
            for j in compat[i]:
                state_a.clear()
                state_b.clear()
                state_a[i] = j
                state_b.add(j)
                extend(i, 0, frozenset())
    except _Expired:
        optimal = False

    return McsResult(
        mapping=list(best["mapping"]),
        size_atoms=best["atoms"],
        size_bonds=best["bonds"],
        optimal=optimal,
    )


def _atoms_compatible(a: MolGraph, i: int, b: MolGraph, j: int) -> bool:
    aa, bb = a.atoms[i], b.atoms[j]
    return aa.element == bb.element and aa.aromatic == bb.aromatic
