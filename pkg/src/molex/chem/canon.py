"""Canonical SMILES: order-independent ranking plus deterministic emission.

Atoms are ranked by iterative invariant refinement (element, charge,
isotope, degree, hydrogen count, aromaticity, ring membership); remaining
ties are broken systematically by individuating each candidate of the
first tied class and keeping the lexicographically smallest emitted
string. Stereo marks are stripped from the output and flagged.
"""

from __future__ import annotations

from typing import NamedTuple

from .elements import ORGANIC_SUBSET, default_hydrogens
from .graph import AROMATIC, BOND_SORT_KEY, DOUBLE, MolGraph, SINGLE, TRIPLE
from .parse import parse_smiles

__all__ = ["CanonicalResult", "canonicalize", "canonical_smiles", "emit_smiles"]


class CanonicalResult(NamedTuple):
    smiles: str
    stereo_stripped: bool


def canonicalize(mol: MolGraph) -> CanonicalResult:
    """Canonical SMILES for a molecule; flag is True when stereo was dropped."""
    parts = []
    for frag in mol.fragments():
        ranks = _canonical_ranks(mol, frag)
        parts.append(emit_smiles(mol, frag, ranks))
    parts.sort()
    return CanonicalResult(".".join(parts), mol.stereo_present)


def canonical_smiles(text_or_mol) -> str:
    """Convenience: canonical string from a SMILES string or MolGraph."""
    mol = parse_smiles(text_or_mol) if isinstance(text_or_mol, str) else text_or_mol
    return canonicalize(mol).smiles


# --- ranking ---------------------------------------------------------------


def _initial_keys(mol: MolGraph, frag: list[int]) -> dict[int, tuple]:
    keys = {}
    for i in frag:
        a = mol.atoms[i]
        keys[i] = (
            a.element,
            a.aromatic,
            a.charge,
            a.isotope or 0,
            a.hcount,
            mol.degree(i),
            i in mol.ring_atoms,
        )
    return keys


def _refine(mol: MolGraph, frag: list[int], ranks: dict[int, int]) -> dict[int, int]:
    nclasses = len(set(ranks.values()))
    while True:
        keys = {}
        for i in frag:
            nb = sorted(
                (BOND_SORT_KEY[mol.bonds[bi].order], ranks[j])
                for j, bi in mol.adjacency[i]
            )
            keys[i] = (ranks[i], tuple(nb))
        ranks = _dense(keys)
        new_n = len(set(ranks.values()))
        if new_n == nclasses:
            return ranks
        nclasses = new_n


def _dense(keys: dict[int, tuple]) -> dict[int, int]:
    order = sorted(set(keys.values()))
    pos = {k: r for r, k in enumerate(order)}
    return {i: pos[k] for i, k in keys.items()}


def _canonical_ranks(mol: MolGraph, frag: list[int]) -> dict[int, int]:
    ranks = _dense(_initial_keys(mol, frag))
    ranks = _refine(mol, frag, ranks)
    _, ranks = _break_ties(mol, frag, ranks)
    return ranks


def _break_ties(mol: MolGraph, frag: list[int], ranks: dict[int, int]):
    classes: dict[int, list[int]] = {}
    for i in frag:
        classes.setdefault(ranks[i], []).append(i)
    tied = [r for r in sorted(classes) if len(classes[r]) > 1]
    if not tied:
        return emit_smiles(mol, frag, ranks), ranks
    r0 = tied[0]
    best = None
    for atom in classes[r0]:
        trial = dict(ranks)
        # individuate: pull one atom ahead of its class, re-densify, refine
        for j in frag:
            trial[j] = trial[j] * 2
        trial[atom] -= 1
        trial = _dense({i: (trial[i],) for i in frag})
        trial = _refine(mol, frag, trial)
        emitted, final = _break_ties(mol, frag, trial)
        if best is None or emitted < best[0]:
            best = (emitted, final)
    return best


# --- emission ----------------------------------------------------------------


def emit_smiles(mol: MolGraph, frag: list[int], ranks: dict[int, int]) -> str:
    """Write one fragment as SMILES following the given atom ranking.

    Ranks need not be discrete: neighbor visiting order sorts by rank then
    atom index, so a discrete ranking yields an order-independent string
    (used canonically) while any ranking yields a valid re-parsable string
    (used by tests to emit permuted forms).
    """
    # terminal start atoms give linear strings; the tuple is rank-derived,
    # so the choice stays order-independent
    start = min(frag, key=lambda i: (min(mol.degree(i), 2), ranks[i], i))
    order_key = lambda j: (ranks[j], j)

    # pass 1: spanning tree + ring closure discovery in emission order
    visited = {start}
    tree: dict[int, list[int]] = {i: [] for i in frag}
    closure_bonds: list[tuple[int, int, int]] = []  # (opener, closer, bond idx)
    closure_seen: set[int] = set()
    visit_order = [start]

    # iterative DFS to avoid recursion limits
    parent_bond: dict[int, int] = {}
    stack = [(start, iter(sorted(mol.adjacency[start], key=lambda t: order_key(t[0]))))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for u, bi in it:
            if u in visited:
                if bi not in closure_seen and bi != parent_bond.get(v):
                    closure_seen.add(bi)
                    closure_bonds.append((u, v, bi))
                continue
            visited.add(u)
            parent_bond[u] = bi
            tree[v].append(u)
            visit_order.append(u)
            stack.append((u, iter(sorted(mol.adjacency[u], key=lambda t: order_key(t[0])))))
            advanced = True
            break
        if not advanced:
            stack.pop()

    # ring-closure digits: assigned in order of the opening atom's visit
    visit_pos = {v: p for p, v in enumerate(visit_order)}
    closure_bonds.sort(key=lambda t: (visit_pos[t[0]], visit_pos[t[1]]))
    closure_num: dict[int, int] = {}
    at_atom: dict[int, list[tuple[int, int, int]]] = {}  # atom -> [(num, bond, other)]
    for num, (opener, closer, bi) in enumerate(closure_bonds, start=1):
        closure_num[bi] = num
        at_atom.setdefault(opener, []).append((num, bi, closer))
        at_atom.setdefault(closer, []).append((num, bi, opener))

    out: list[str] = []

    def bond_token(bi: int) -> str:
        order = mol.bonds[bi].order
        if order == DOUBLE:
            return "="
        if order == TRIPLE:
            return "#"
        if order == AROMATIC:
            return ""
        a, b = mol.bonds[bi].a, mol.bonds[bi].b
        if mol.atoms[a].aromatic and mol.atoms[b].aromatic:
            return "-"  # explicit single between aromatic atoms
        return ""

    def emit_atom(v: int) -> None:
        out.append(_atom_token(mol, v))
        for num, bi, other in sorted(at_atom.get(v, [])):
            if visit_pos[other] > visit_pos[v]:
                out.append(bond_token(bi))
            out.append(str(num) if num <= 9 else f"%{num:02d}")

    def emit_subtree(v: int) -> None:
        emit_atom(v)
        children = tree[v]
        for idx, u in enumerate(children):
            last = idx == len(children) - 1
            token = bond_token(parent_bond[u])
            if not last:
                out.append("(")
                out.append(token)
                emit_subtree(u)
                out.append(")")
            else:
                out.append(token)
                emit_subtree(u)

    # The recursion above is bounded by molecule depth; molecules this engine
    # targets are far below the interpreter limit, but guard linear chains.
    import sys

    if len(frag) + 10 > sys.getrecursionlimit():
        sys.setrecursionlimit(len(frag) * 2 + 100)
    emit_subtree(start)
    return "".join(out)


def _atom_token(mol: MolGraph, i: int) -> str:
    a = mol.atoms[i]
    sym = a.element.lower() if a.aromatic else a.element
    if a.element == "*":
        return "*"
    needs_bracket = (
        a.element not in ORGANIC_SUBSET
        or a.charge != 0
        or a.isotope is not None
        or not _hydrogens_reproducible(mol, i)
    )
    if not needs_bracket:
        return sym
    parts = ["["]
    if a.isotope is not None:
        parts.append(str(a.isotope))
    parts.append(sym)
    if a.hcount == 1:
        parts.append("H")
    elif a.hcount > 1:
        parts.append(f"H{a.hcount}")
    if a.charge == 1:
        parts.append("+")
    elif a.charge == -1:
        parts.append("-")
    elif a.charge > 1:
        parts.append(f"+{a.charge}")
    elif a.charge < -1:
        parts.append(f"-{-a.charge}")
    parts.append("]")
    return "".join(parts)


def _hydrogens_reproducible(mol: MolGraph, i: int) -> bool:
    """Would a bare organic-subset token re-parse to the same H count?"""
    a = mol.atoms[i]
    if a.element not in ORGANIC_SUBSET:
        return False
    if a.aromatic:
        if a.element == "C":
            heavy = mol.bond_order_sum(i)
            extra = 1 if mol.needs_ring_double(i) else 0
            return a.hcount == max(4 - heavy - extra, 0)
        return a.hcount == 0
    return a.hcount == default_hydrogens(a.element, mol.bond_order_sum(i))
