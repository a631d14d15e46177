"""Molecular descriptors: weight, logP, Lipinski counts, TPSA, QED, RO5."""

from .core import (
    DescriptorSet,
    compute_descriptors,
    lipinski_counts,
    molecular_weight,
    physchem_profile,
    ro5_violations,
    tpsa,
)
from .crippen import crippen_logp
from .qed import qed

__all__ = [
    "DescriptorSet",
    "compute_descriptors",
    "crippen_logp",
    "lipinski_counts",
    "molecular_weight",
    "physchem_profile",
    "qed",
    "ro5_violations",
    "tpsa",
]
