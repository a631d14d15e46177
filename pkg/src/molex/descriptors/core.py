"""Core molecular descriptors: weight, Lipinski counts, TPSA, rotatable
bonds, aromatic rings, and rule-of-five conformity."""

from __future__ import annotations

from dataclasses import dataclass

from ..chem.graph import AROMATIC, DOUBLE, MolGraph, SINGLE, TRIPLE
from .tables import atomic_masses, isotope_masses, tpsa_contributions

__all__ = [
    "DescriptorSet",
    "molecular_weight",
    "lipinski_counts",
    "physchem_profile",
    "tpsa",
    "ro5_violations",
    "compute_descriptors",
]


@dataclass(frozen=True)
class DescriptorSet:
    mw: float
    logp: float
    hbd: int
    hba: int
    tpsa: float
    rotb: int
    arom_rings: int
    qed: float
    ro5_violations: int
    ro5_pass: bool


def molecular_weight(mol: MolGraph) -> float:
    """Average-mass molecular weight; labeled isotopes use nuclide masses."""
    masses = atomic_masses()
    iso = isotope_masses()
    h_mass = masses["H"]
    total = 0.0
    for a in mol.atoms:
        if a.element == "*":
            continue
        if a.isotope is not None:
            total += iso.get((a.element, a.isotope), float(a.isotope))
        else:
            try:
                total += masses[a.element]
            except KeyError:
                raise ValueError(f"no mass tabulated for element {a.element!r}")
        total += a.hcount * h_mass
    return total


def lipinski_counts(mol: MolGraph) -> tuple[int, int]:
    """(hbd, hba): O-H/N-H bond count and N+O atom count (Lipinski)."""
    hbd = sum(a.hcount for a in mol.atoms if a.element in ("N", "O"))
    hba = sum(1 for a in mol.atoms if a.element in ("N", "O"))
    return hbd, hba


def tpsa(mol: MolGraph) -> float:
    """Ertl polar surface area over N/O environments."""
    table = tpsa_contributions()
    total = 0.0
    for i, a in enumerate(mol.atoms):
        if a.element not in ("N", "O"):
            continue
        key = _tpsa_key(mol, i)
        contrib = table.get(key)
        if contrib is None:
            contrib = _tpsa_fallback(mol, i, table)
        total += contrib
    return total


def _tpsa_key(mol: MolGraph, i: int) -> str:
    a = mol.atoms[i]
    orders = sorted(
        {SINGLE: "s", DOUBLE: "d", TRIPLE: "t", AROMATIC: "a"}[mol.bonds[bi].order]
        for _, bi in mol.adjacency[i]
    )
    bond_sig = "".join(sorted(orders, key="sdta".index))
    el = a.element.lower() if a.aromatic else a.element
    h = a.hcount
    q = "+" if a.charge > 0 else ("-" if a.charge < 0 else "")
    hpart = "" if h == 0 else ("H" if h == 1 else f"H{h}")
    in_r3 = any(len(r) == 3 and i in r for r in mol.ring_info)
    key = f"{el}{hpart}{q}_{bond_sig}"
    if in_r3 and f"{key}_r3" in tpsa_contributions():
        return f"{key}_r3"
    return key


def _tpsa_fallback(mol: MolGraph, i: int, table) -> float:
    """Nearest generic environment for combinations outside the table."""
    a = mol.atoms[i]
    if a.element == "O":
        if a.aromatic:
            return table["o_aa"]
        if a.charge < 0:
            return table["O-_s"]
        if a.hcount >= 1:
            return table["OH_s"]
        if any(mol.bonds[bi].order == DOUBLE for _, bi in mol.adjacency[i]):
            return table["O_d"]
        return table["O_ss"]
    if a.aromatic:
        if a.charge > 0:
            return table["nH+_aa"] if a.hcount else table["n+_aaa"]
        return table["nH_aa"] if a.hcount else table["n_aa"]
    if a.charge > 0:
        return {0: table["N+_ssss"], 1: table["NH+_sss"], 2: table["NH2+_ss"]}.get(
            a.hcount, table["NH3+_s"]
        )
    if a.hcount >= 2:
        return table["NH2_s"]
    if a.hcount == 1:
        return table["NH_ss"]
    return table["N_sss"]


def rotatable_bonds(mol: MolGraph) -> int:
    """Non-ring single bonds between heavy atoms of degree >= 2, minus amides."""
    count = 0
    for bi, b in enumerate(mol.bonds):
        if b.order != SINGLE or bi in mol.ring_bonds:
            continue
        if mol.degree(b.a) < 2 or mol.degree(b.b) < 2:
            continue
        if _is_amide_cn(mol, b.a, b.b) or _is_amide_cn(mol, b.b, b.a):
            continue
        count += 1
    return count


def _is_amide_cn(mol: MolGraph, c: int, n: int) -> bool:
    if mol.atoms[c].element != "C" or mol.atoms[n].element != "N":
        return False
    return any(
        mol.bonds[bi].order == DOUBLE and mol.atoms[k].element == "O"
        for k, bi in mol.adjacency[c]
    )


def aromatic_ring_count(mol: MolGraph) -> int:
    return sum(1 for ring in mol.ring_info if all(mol.atoms[i].aromatic for i in ring))


def physchem_profile(mol: MolGraph) -> tuple[float, int, int]:
    """(tpsa, rotatable bonds, aromatic ring count)."""
    return tpsa(mol), rotatable_bonds(mol), aromatic_ring_count(mol)


def ro5_violations(mw: float, logp: float, hbd: int, hba: int) -> tuple[int, bool]:
    """Lipinski violations (strict inequalities) and conformity (<=1)."""
    violations = sum([mw > 500.0, logp > 5.0, hbd > 5, hba > 10])
    return violations, violations <= 1


def compute_descriptors(mol: MolGraph) -> DescriptorSet:
    from .crippen import crippen_logp
    from .qed import qed as qed_fn

    mw = molecular_weight(mol)
    logp = crippen_logp(mol)
    hbd, hba = lipinski_counts(mol)
    t, rotb, arom = physchem_profile(mol)
    q = qed_fn(mol)
    viol, ok = ro5_violations(mw, logp, hbd, hba)
    return DescriptorSet(
        mw=mw, logp=logp, hbd=hbd, hba=hba, tpsa=t, rotb=rotb,
        arom_rings=arom, qed=q, ro5_violations=viol, ro5_pass=ok,
    )
