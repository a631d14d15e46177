"""Quantitative estimate of drug-likeness.

Weighted geometric mean of eight desirability functions (MW, ALOGP, HBA,
HBD, PSA, ROTB, AROM, ALERTS), each an asymmetric double sigmoid with the
published parameters, normalized by its maximum. The HBA/HBD inputs follow
the acceptor/donor-atom conventions of the QED publication (which differ
from the Lipinski counts exposed separately); ALERTS counts how many
patterns of the bundled alert list hit at least once.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ..chem.graph import DOUBLE, MolGraph
from ..chem.match import match_pattern
from ..chem.parse import parse_smiles
from .core import aromatic_ring_count, molecular_weight, rotatable_bonds, tpsa
from .crippen import crippen_logp
from .tables import qed_ads_parameters, qed_alert_patterns

__all__ = ["qed", "qed_properties", "hba_qed", "hbd_qed", "alert_count"]


def qed(mol: MolGraph) -> float:
    props = qed_properties(mol)
    params = qed_ads_parameters()
    num = 0.0
    den = 0.0
    for name, x in props.items():
        p = params[name]
        d = _ads(x, p) / p["dmax"]
        d = max(d, 1e-10)
        num += p["weight"] * math.log(d)
        den += p["weight"]
    return math.exp(num / den)


def qed_properties(mol: MolGraph) -> dict[str, float]:
    return {
        "MW": molecular_weight(mol),
        "ALOGP": crippen_logp(mol),
        "HBA": float(hba_qed(mol)),
        "HBD": float(hbd_qed(mol)),
        "PSA": tpsa(mol),
        "ROTB": float(rotatable_bonds(mol)),
        "AROM": float(aromatic_ring_count(mol)),
        "ALERTS": float(alert_count(mol)),
    }


def _ads(x: float, p: dict[str, float]) -> float:
    e1 = 1.0 + _exp(-(x - p["c"] + p["d"] / 2.0) / p["e"])
    e2 = 1.0 + _exp(-(x - p["c"] - p["d"] / 2.0) / p["f"])
    return p["a"] + p["b"] / e1 * (1.0 - 1.0 / e2)


def _exp(z: float) -> float:
    return math.exp(min(max(z, -700.0), 700.0))


def hba_qed(mol: MolGraph) -> int:
    """Acceptor atoms per the QED convention."""
    count = 0
    for i, a in enumerate(mol.atoms):
        el, q, h, deg = a.element, a.charge, a.hcount, mol.degree(i)
        v = mol.bond_order_sum(i) + h + (1 if mol.needs_ring_double(i) else 0)
        if el == "O":
            if a.aromatic and h == 0 and deg == 2:
                count += 1
            elif not a.aromatic and q == 0 and v == 2:
                count += 1
            elif q == -1 and deg == 1:
                count += 1
        elif el == "S":
            if not a.aromatic and q == 0 and h == 0 and v == 2:
                count += 1
            elif q == -1 and deg == 1:
                count += 1
        elif el == "N":
            if a.aromatic:
                if h == 0 and deg == 2 and q == 0:
                    count += 1
            elif q == 0:
                if h == 0 and deg == 1 and v == 3:
                    count += 1  # nitrile-like terminal N
                elif deg + h == 3 and v == 3 and not _amide_like(mol, i):
                    count += 1
    return count


def _amide_like(mol: MolGraph, n: int) -> bool:
    """N attached to C or S bearing a double bond to O."""
    for j, _ in mol.adjacency[n]:
        if mol.atoms[j].element in ("C", "S"):
            if any(
                mol.bonds[bi].order == DOUBLE and mol.atoms[k].element == "O"
                for k, bi in mol.adjacency[j]
            ):
                return True
    return False


def hbd_qed(mol: MolGraph) -> int:
    """Donor atoms per the QED convention (each donor atom counts once)."""
    count = 0
    for i, a in enumerate(mol.atoms):
        if a.hcount < 1:
            continue
        if a.element == "N":
            v = mol.bond_order_sum(i) + a.hcount + (1 if mol.needs_ring_double(i) else 0)
            if (a.charge == 0 and v == 3) or (a.charge == 1 and v == 4) or a.aromatic:
                count += 1
        elif a.element in ("O", "S") and a.charge == 0:
            count += 1
    return count


@lru_cache(maxsize=1)
def _alert_mols():
    return [(name, parse_smiles(pat, pattern=True)) for name, pat in qed_alert_patterns()]


def alert_count(mol: MolGraph) -> int:
    """Number of alert patterns matching at least once."""
    n = 0
    for _, pat in _alert_mols():
        if len(pat.atoms) <= len(mol.atoms) and match_pattern(mol, pat):
            n += 1
    return n
