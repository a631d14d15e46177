"""SMILES parsing, canonicalization, matching, MCS, and depiction."""

from .canon import CanonicalResult, canonical_smiles, canonicalize, emit_smiles
from .graph import AROMATIC, Atom, Bond, DOUBLE, MolGraph, SINGLE, TRIPLE
from .parse import ParseError, parse_smiles

__all__ = [
    "AROMATIC",
    "Atom",
    "Bond",
    "CanonicalResult",
    "DOUBLE",
    "MolGraph",
    "ParseError",
    "SINGLE",
    "TRIPLE",
    "canonical_smiles",
    "canonicalize",
    "emit_smiles",
    "parse_smiles",
]
