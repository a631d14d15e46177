"""Subgraph-isomorphism matching of query patterns against molecules.

Patterns are MolGraphs parsed with ``parse_smiles(..., pattern=True)``.
Bare organic-subset pattern atoms constrain element and aromaticity only;
bracket pattern atoms additionally pin charge, isotope (when given) and
exact hydrogen count. ``*`` matches any element. Every pattern bond must
map onto a molecule bond of identical order.
"""

from __future__ import annotations

from .graph import MolGraph

__all__ = ["match_pattern"]


def match_pattern(
    mol: MolGraph, pattern: MolGraph, match_mode: str = "substructure"
) -> list[tuple[int, ...]]:
    """All embeddings of `pattern` in `mol`, one per matched atom set.

    Mappings equal up to the set of matched molecule atoms are collapsed to
    the lexicographically smallest tuple (so benzene contains the two-atom
    aromatic pattern six times, not twelve). Results sort lexicographically.
    """
    if match_mode != "substructure":
        raise ValueError(f"unsupported match mode: {match_mode!r}")
    np_, nm = len(pattern.atoms), len(mol.atoms)
    if np_ == 0 or np_ > nm:
        return []
    order = _connected_order(pattern)

    results: dict[frozenset[int], tuple[int, ...]] = {}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(pos: int) -> None:
        if pos == len(order):
            img = tuple(mapping[p] for p in range(np_))
            key = frozenset(img)
            prev = results.get(key)
            if prev is None or img < prev:
                results[key] = img
            return
        p, anchor = order[pos]
        if anchor is None:
            candidates = range(nm)
        else:
            candidates = sorted(j for j, _ in mol.adjacency[mapping[anchor]])
        for c in candidates:
            if c in used:
                continue
            if not _atom_ok(pattern, p, mol, c):
                continue
            if not _bonds_ok(pattern, p, mol, c, mapping):
                continue
            mapping[p] = c
            used.add(c)
            backtrack(pos + 1)
            del mapping[p]
            used.discard(c)

    backtrack(0)
    return sorted(results.values())


def _connected_order(pattern: MolGraph) -> list[tuple[int, int | None]]:
    """Pattern atoms in a DFS order where each has a previously-placed anchor."""
    n = len(pattern.atoms)
    seen = {0}
    order: list[tuple[int, int | None]] = [(0, None)]
    stack = [0]
    while stack:
        v = stack.pop()
        for u, _ in sorted(pattern.adjacency[v]):
            if u not in seen:
                seen.add(u)
                order.append((u, v))
                stack.append(u)
    if len(seen) != n:
        raise ValueError("pattern must be a connected graph")
    return order


def _atom_ok(pattern: MolGraph, p: int, mol: MolGraph, c: int) -> bool:
    pa, ma = pattern.atoms[p], mol.atoms[c]
    if pa.element != "*" and pa.element != ma.element:
        return False
    if pa.aromatic != ma.aromatic:
        return False
    if pa.from_bracket:
        if pa.charge != ma.charge:
            return False
        if pa.isotope is not None and pa.isotope != ma.isotope:
            return False
        if pa.explicit_h is not None and pa.explicit_h != ma.hcount:
            return False
    return True


def _bonds_ok(pattern: MolGraph, p: int, mol: MolGraph, c: int, mapping) -> bool:
    for q, pbi in pattern.adjacency[p]:
        if q not in mapping:
            continue
        mb = mol.bond_between(c, mapping[q])
        if mb is None or mb.order != pattern.bonds[pbi].order:
            return False
    return True
