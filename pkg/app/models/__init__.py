"""Exact coefficient rings, series, polynomials and Witt vectors."""

from app.models.poly import MonomialOrder, MultiPoly, PolynomialRing
from app.models.rings import (
    QQ,
    ModRingElement,
    ModularRing,
    RationalField,
    TruncatedPoly,
    TruncatedPolyRing,
    modular_ring,
)
from app.models.series import TruncatedLaurentSeries
from app.models.witt import WittVector

__all__ = [
    "QQ",
    "ModRingElement",
    "ModularRing",
    "MonomialOrder",
    "MultiPoly",
    "PolynomialRing",
    "RationalField",
    "TruncatedLaurentSeries",
    "TruncatedPoly",
    "TruncatedPolyRing",
    "WittVector",
    "modular_ring",
]
