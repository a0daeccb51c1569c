"""Computations: Gröbner bases, residues, Brieskorn lattices, pairings, Witt levels."""

from app.services.pairing import PairingMatrix, flat_extend_pairing, pairing_basis
from app.services.residues import MilnorAlgebra, milnor_algebra
from app.services.singularity import FamilyDeformation, QHSingularity, qh_check
from app.services.witt_lift import WittContext, compat_check, witt_pairing

__all__ = [
    "FamilyDeformation",
    "MilnorAlgebra",
    "PairingMatrix",
    "QHSingularity",
    "WittContext",
    "compat_check",
    "flat_extend_pairing",
    "milnor_algebra",
    "pairing_basis",
    "qh_check",
    "witt_pairing",
]
