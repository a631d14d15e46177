"""Element data: recognized symbols, standard valences, organic subset."""

# Standard valence table; charge shifts permitted valences by +/-|charge|.
VALENCES = {
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# Elements writable without brackets.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}

# Elements that may carry the aromatic flag (lowercase in SMILES).
AROMATIC_OK = {"B", "C", "N", "O", "P", "S", "Se", "As"}

# Everything else is recognized for bracket atoms but not valence-checked.
KNOWN_ELEMENTS = set(VALENCES) | {
    "H", "He", "Li", "Be", "Ne", "Na", "Mg", "Al", "Si", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge",
    "As", "Se", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "Xe", "Cs", "Ba", "La", "Ce",
    "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb",
    "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb",
    "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "*",
}


def permitted_valences(element: str, charge: int) -> tuple[int, ...]:
    """Charge-shifted admissible valences for an element, empty if untabulated."""
    base = VALENCES.get(element)
    if base is None:
        return ()
    q = abs(charge)
    if q == 0:
        return base
    vals = {v + q for v in base} | {v - q for v in base if v - q >= 0}
    return tuple(sorted(vals))


def default_hydrogens(element: str, bond_order_sum: int) -> int:
    """Implicit H for a bare organic-subset atom, or -1 on valence overflow."""
    for v in VALENCES[element]:
        if v >= bond_order_sum:
            return v - bond_order_sum
    return -1
