"""Crippen atom-contribution logP.

Deterministic atom typing following the published contribution scheme:
each heavy atom gets a type from its element, hybridization, and
neighborhood; hydrogens are typed from the heavy atom they sit on.
Unmatched atoms take the published wildcard contributions.
"""

from __future__ import annotations

from ..chem.graph import AROMATIC, DOUBLE, MolGraph, SINGLE, TRIPLE
from .tables import crippen_contributions

__all__ = ["crippen_logp", "atom_types"]

_HET = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}
_ME1 = {"Li", "Na", "K", "Rb", "Cs", "Fr", "Be", "Mg", "Ca", "Sr", "Ba", "Ra",
        "Al", "Ga", "In", "Tl"}


def crippen_logp(mol: MolGraph) -> float:
    """Sum of per-atom contributions, hydrogens included."""
    table = crippen_contributions()
    total = 0.0
    for i in range(len(mol.atoms)):
        ctype, htype = atom_types(mol, i)
        total += table[ctype]
        h = mol.atoms[i].hcount
        if h:
            total += h * table[htype]
    return total


def atom_types(mol: MolGraph, i: int) -> tuple[str, str]:
    """(heavy atom type, hydrogen type) for atom i."""
    a = mol.atoms[i]
    el = a.element
    if el == "C":
        return _type_carbon(mol, i), "H1"
    if el == "N":
        return _type_nitrogen(mol, i), "H3"
    if el == "O":
        return _type_oxygen(mol, i), _type_h_on_oxygen(mol, i)
    if el == "S":
        if a.aromatic:
            return "S3", "H2"
        return ("S1" if a.charge == 0 else "S2"), "H2"
    if el == "P":
        return "P", "H2"
    if el in ("F", "Cl", "Br", "I"):
        if a.charge == 0:
            return el, "HS"
        return "Hal", "HS"
    if el == "H":
        return "HS", "HS"
    if el in _ME1:
        return "Me1", "HS"
    if el == "*":
        return "Me2", "HS"
    return "Me2", "HS"


def _nbr_info(mol: MolGraph, i: int):
    """Neighbor summary: lists of (atom, bond order) plus category counts."""
    info = []
    for j, bi in mol.adjacency[i]:
        info.append((mol.atoms[j], mol.bonds[bi].order))
    return info


def _type_carbon(mol: MolGraph, i: int) -> str:
    a = mol.atoms[i]
    h = a.hcount
    nbrs = _nbr_info(mol, i)
    if a.aromatic:
        single = [n for n, o in nbrs if o == SINGLE]
        double = [n for n, o in nbrs if o == DOUBLE]
        arom = [n for n, o in nbrs if o == AROMATIC]
        # P counts as exotic on aromatic carbon, unlike the aliphatic case
        exotic = [
            n for n in single
            if not n.aromatic
            and n.element not in {"C", "N", "O", "S", "F", "Cl", "Br", "I", "*"}
        ]
        if h == 0 and exotic:
            return "C13"
        for n, o in nbrs:
            if n.element == "F":
                return "C14"
            if n.element == "Cl":
                return "C15"
            if n.element == "Br":
                return "C16"
            if n.element == "I":
                return "C17"
        if h >= 1:
            return "C18"
        if len(arom) >= 3:
            return "C19"
        if any(n.aromatic for n in single):
            return "C20"
        if any(n.element == "C" and not n.aromatic for n in single):
            return "C21"
        if any(n.element == "N" and not n.aromatic for n in single):
            return "C22"
        if any(n.element == "O" and not n.aromatic for n in single):
            return "C23"
        if any(n.element == "S" and not n.aromatic for n in single):
            return "C24"
        if any(n.element in ("C", "N", "O") for n in double):
            return "C25"
        return "CS"

    has_double = any(o == DOUBLE for _, o in nbrs)
    has_triple = any(o == TRIPLE for _, o in nbrs)
    if not has_double and not has_triple:
        # sp3 carbon
        het = [n for n, _ in nbrs if not n.aromatic and n.element in _HET]
        arom = [n for n, _ in nbrs if n.aromatic]
        all_c = all(n.element == "C" and not n.aromatic for n, _ in nbrs)
        if all_c:
            return "C1" if h >= 2 else "C2"
        if het and h >= 2:
            return "C3"
        if het:
            return "C4"
        if arom:
            first = next(n for n, _ in nbrs if n.aromatic)
            if h == 3:
                return "C8" if first.element == "C" else "C9"
            if h == 2:
                return "C10"
            if h == 1:
                return "C11"
            return "C12"
        exotic = [
            n for n, _ in nbrs
            if not n.aromatic and n.element not in ({"C"} | _HET) and n.element != "*"
        ]
        if exotic:
            return "C27"
        return "CS"

    # sp2 / sp carbon
    if has_double:
        for n, o in nbrs:
            if o == DOUBLE and not n.aromatic and n.element != "C" and n.element != "*":
                return "C5"
    if has_triple:
        return "C7"
    dbl_to_c = [n for n, o in nbrs if o == DOUBLE and n.element == "C" and not n.aromatic]
    dbl_to_arom = [n for n, o in nbrs if o == DOUBLE and n.aromatic]
    others = [n for n, o in nbrs if o != DOUBLE]
    if dbl_to_c:
        if len(dbl_to_c) >= 2:
            return "C6"  # allene center
        if h == 2:
            return "C6"
        arom_others = [n for n in others if n.aromatic]
        if arom_others:
            return "C26"
        if h == 1 and len(others) == 1:
            return "C6"
        if h == 0 and len(others) == 2:
            return "C6"
        return "CS"
    if dbl_to_arom:
        return "C26"
    return "CS"


def _type_nitrogen(mol: MolGraph, i: int) -> str:
    a = mol.atoms[i]
    h = a.hcount
    nbrs = _nbr_info(mol, i)
    if a.aromatic:
        return "N11" if a.charge == 0 else "N12"
    if a.charge == 0:
        arom = [n for n, o in nbrs if n.aromatic]
        has_double = any(o == DOUBLE for _, o in nbrs)
        has_triple = any(o == TRIPLE for _, o in nbrs)
        if has_triple:
            return "N9"
        if h == 2 and len(nbrs) == 1:
            return "N3" if arom else "N1"
        if h == 1 and has_double:
            return "N5"
        if h == 1 and len(nbrs) == 2:
            return "N4" if arom else "N2"
        if h == 0 and has_double and len(nbrs) == 2:
            return "N6"
        if h == 0 and len(nbrs) == 3:
            return "N8" if arom else "N7"
        return "NS"
    if a.charge > 0:
        has_triple = any(o == TRIPLE for _, o in nbrs)
        if has_triple:
            return "N14"
        if h >= 1:
            return "N10"
        return "N13"
    return "N14"  # anionic nitrogen


def _type_oxygen(mol: MolGraph, i: int) -> str:
    a = mol.atoms[i]
    h = a.hcount
    nbrs = _nbr_info(mol, i)
    if a.aromatic:
        return "O1"
    if a.charge < 0:
        if len(nbrs) == 1:
            n, o = nbrs[0]
            if n.element == "N":
                return "O5"
            if n.element == "S":
                return "O6"
            if n.element == "C":
                # carboxylate O-
                j = mol.adjacency[i][0][0]
                if any(
                    mol.bonds[bi].order == DOUBLE and mol.atoms[k].element == "O"
                    for k, bi in mol.adjacency[j]
                ):
                    return "O12"
            return "O7"
        return "O7"
    if h >= 1:
        return "O2"
    dbl = [(n, o) for n, o in nbrs if o == DOUBLE]
    if dbl:
        n = dbl[0][0]
        if n.element in ("N", "O"):
            return "O5"
        if n.element == "S":
            return "O6"
        if n.aromatic and n.element == "C":
            return "O8"
        if n.element == "C":
            j = next(j for j, bi in mol.adjacency[i] if mol.bonds[bi].order == DOUBLE)
            return _carbonyl_oxygen_type(mol, j)
        return "OS"
    if len(nbrs) == 2:
        if any(n.aromatic for n, _ in nbrs):
            return "O4"
        return "O3"
    return "OS"


def _carbonyl_oxygen_type(mol: MolGraph, c: int) -> str:
    """O9/O10/O11 split by the carbonyl carbon's other substituents."""
    subs = []
    for k, bi in mol.adjacency[c]:
        if mol.bonds[bi].order == DOUBLE and mol.atoms[k].element == "O":
            continue
        subs.append(mol.atoms[k])
    arom_subs = [s for s in subs if s.aromatic]
    c_subs = [s for s in subs if s.element == "C" and not s.aromatic]
    other_subs = [s for s in subs if s.element not in ("C",) and not s.aromatic]
    if arom_subs:
        return "O10"
    if len(subs) == 2 and not c_subs and other_subs:
        return "O11" if len(other_subs) == 2 else "O9"
    return "O9"


def _type_h_on_oxygen(mol: MolGraph, i: int) -> str:
    """Hydrogen type for H sitting on oxygen atom i."""
    for j, bi in mol.adjacency[i]:
        n = mol.atoms[j]
        if n.element == "N":
            return "H3"
        if n.element in ("O", "S"):
            return "H4"
        if n.element == "C":
            if n.aromatic:
                return "H2"
            # acid-like: H-O-C=X
            if any(
                mol.bonds[b2].order == DOUBLE
                and mol.atoms[k].element in ("C", "N", "O", "S")
                for k, b2 in mol.adjacency[j]
            ):
                return "H4"
            return "H2"
        return "H2"
    return "H2"  # water
