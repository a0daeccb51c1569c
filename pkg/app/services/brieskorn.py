"""Brieskorn lattice classes, t-adic reduction and the connection operators.

Classes of forms g*dx are reduced with the rewrite rule

    (sum a_i d_i f) dx  ==  -t (sum d_i a_i) dx,

which comes from the boundary (t d + df^) vanishing in the quotient. The
connections are t d/dt - f/t and d/ds + (d f_s/ds)/t.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from app.core.exceptions import InternalInconsistencyError, TypeMismatchError
from app.models.poly import MultiPoly
from app.models.rings import CoefficientRing
from app.models.series import TruncatedLaurentSeries
from app.services.groebner import normal_form_with_cofactors
from app.services.residues import MilnorAlgebra
from app.services.singularity import FamilyDeformation, family_division

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BrieskornElement:
    """sum_i c_i(t) [phi_i dx] in coordinates over the Milnor basis."""

    algebra: MilnorAlgebra
    coordinates: tuple[TruncatedLaurentSeries, ...]
    family: FamilyDeformation | None = None

    def __post_init__(self) -> None:
        if len(self.coordinates) != self.algebra.mu:
            raise ValueError(
                f"Expected {self.algebra.mu} coordinates, got {len(self.coordinates)}"
            )

    @classmethod
    def zero(
        cls, algebra: MilnorAlgebra, order: int, family: FamilyDeformation | None = None
    ) -> "BrieskornElement":
        ring = coefficient_ring(algebra, family)
        return cls(
            algebra,
            tuple(TruncatedLaurentSeries.zero(ring, order) for _ in algebra.basis),
            family,
        )

    @classmethod
    def basis_element(
        cls,
        algebra: MilnorAlgebra,
        index: int,
        order: int,
        family: FamilyDeformation | None = None,
    ) -> "BrieskornElement":
        ring = coefficient_ring(algebra, family)
        coords = tuple(
            TruncatedLaurentSeries.constant(ring, 1 if i == index else 0, order)
            for i in range(algebra.mu)
        )
        return cls(algebra, coords, family)

    @property
    def ring(self) -> CoefficientRing:
        return coefficient_ring(self.algebra, self.family)

    @property
    def order(self) -> int:
        return min(c.order for c in self.coordinates)

    @property
    def in_lattice(self) -> bool:
        return all(c.low >= 0 for c in self.coordinates)

    def _check(self, other: "BrieskornElement") -> None:
        if other.algebra is not self.algebra or other.family is not self.family:
            raise TypeMismatchError(self.algebra, other.algebra, "lattice")

    def __add__(self, other: "BrieskornElement") -> "BrieskornElement":
        self._check(other)
        return BrieskornElement(
            self.algebra,
            tuple(a + b for a, b in zip(self.coordinates, other.coordinates, strict=True)),
            self.family,
        )

    def __neg__(self) -> "BrieskornElement":
        return BrieskornElement(self.algebra, tuple(-c for c in self.coordinates), self.family)

    def __sub__(self, other: "BrieskornElement") -> "BrieskornElement":
        return self + (-other)

    def scale(self, factor: Any) -> "BrieskornElement":
        """Multiply by a series v(t) or by a scalar."""
        return BrieskornElement(
            self.algebra, tuple(c * factor for c in self.coordinates), self.family
        )

    def shift(self, k: int) -> "BrieskornElement":
        """Multiply by t^k."""
        return BrieskornElement(
            self.algebra, tuple(c.shift(k) for c in self.coordinates), self.family
        )

    def map_coefficients(self, fn: Callable[[Any], Any]) -> "BrieskornElement":
        return BrieskornElement(
            self.algebra, tuple(c.map_coefficients(fn) for c in self.coordinates), self.family
        )

    def agrees_with(self, other: "BrieskornElement") -> bool:
        self._check(other)
        return all(
            a.agrees_with(b) for a, b in zip(self.coordinates, other.coordinates, strict=True)
        )

    def to_text(self) -> str:
        names = [_basis_name(self.algebra, e) for e in self.algebra.basis]
        parts = [
            f"({c.to_text()})*[{name} dx]"
            for c, name in zip(self.coordinates, names, strict=True)
            if not c.is_zero
        ]
        return " + ".join(parts) if parts else f"O(t^{self.order})"


def _basis_name(algebra: MilnorAlgebra, exponent: Sequence[int]) -> str:
    f = algebra.singularity.f
    return MultiPoly.monomial(f.ring, f.variables, tuple(exponent)).to_text()


def coefficient_ring(
    algebra: MilnorAlgebra, family: FamilyDeformation | None
) -> CoefficientRing:
    return family.ring if family is not None else algebra.ring


def reduce_form(
    g: MultiPoly,
    algebra: MilnorAlgebra,
    torder: int,
    family: FamilyDeformation | None = None,
) -> BrieskornElement:
    """Class of g*dx in the lattice, known modulo t^torder."""
    ring = coefficient_ring(algebra, family)
    index = {e: i for i, e in enumerate(algebra.basis)}
    zero = ring.zero()
    buckets = [[zero] * max(torder, 0) for _ in algebra.basis]

    current = family.lift(g) if family is not None else g
    cap = None
    if family is None and not g.is_zero:
        cap = math.floor(g.weighted_degree(algebra.singularity.weights)) + 2
    k = 0
    while not current.is_zero and k < torder:
        if cap is not None and k >= cap:
            raise InternalInconsistencyError(
                f"reduction of {g.to_text()} did not terminate after {cap} rounds"
            )
        if family is not None:
            remainder, cofactors = family_division(current, family)
        else:
            remainder, cofactors = normal_form_with_cofactors(
                current, algebra.singularity.groebner
            )
        for exponent, c in remainder.terms.items():
            slot = index[exponent]
            buckets[slot][k] = buckets[slot][k] + c
        current = -sum(
            (a.derivative(i) for i, a in enumerate(cofactors)),
            MultiPoly.zero(current.ring, current.variables),
        )
        k += 1

    logger.debug(f"Reduced {g.to_text()} in {k} rounds")
    coords = tuple(
        TruncatedLaurentSeries.from_coefficients(ring, bucket, torder) for bucket in buckets
    )
    return BrieskornElement(algebra, coords, family)


def _lifted_basis(algebra: MilnorAlgebra, family: FamilyDeformation | None) -> list[MultiPoly]:
    if family is None:
        return list(algebra.basis_polys)
    return [family.lift(phi) for phi in algebra.basis_polys]


@lru_cache(maxsize=128)
def tdt_images(
    algebra: MilnorAlgebra, family: FamilyDeformation | None, order: int
) -> tuple[BrieskornElement, ...]:
    """-t^-1 [f * phi_i dx] for every basis monomial, known modulo t^order."""
    f = family.fs if family is not None else algebra.singularity.f
    return tuple(
        -reduce_form(f * phi, algebra, order + 1, family).shift(-1)
        for phi in _lifted_basis(algebra, family)
    )


@lru_cache(maxsize=128)
def ds_images(
    algebra: MilnorAlgebra, family: FamilyDeformation, order: int
) -> tuple[BrieskornElement, ...]:
    """t^-1 [g * phi_i dx] for every basis monomial, known modulo t^order."""
    return tuple(
        reduce_form(family.direction * phi, algebra, order + 1, family).shift(-1)
        for phi in _lifted_basis(algebra, family)
    )


def _apply(
    v: BrieskornElement,
    coefficient_part: tuple[TruncatedLaurentSeries, ...],
    images: Sequence[BrieskornElement],
) -> BrieskornElement:
    result = BrieskornElement(v.algebra, coefficient_part, v.family)
    for c, image in zip(v.coordinates, images, strict=True):
        if not c.is_zero:
            result = result + image.scale(c)
    return result


def nabla_tdt(v: BrieskornElement) -> BrieskornElement:
    """Connection t d/dt - f/t; on QH basis elements it acts by the spectral numbers."""
    images = tdt_images(v.algebra, v.family, v.order)
    return _apply(v, tuple(c.theta() for c in v.coordinates), images)


def nabla_s(v: BrieskornElement, family: FamilyDeformation | None = None) -> BrieskornElement:
    """Gauss-Manin connection d/ds + (d f_s/ds)/t along the deformation."""
    family = family or v.family
    if family is None or v.family is not family:
        raise TypeMismatchError(v.family, family, "family")
    images = ds_images(v.algebra, family, v.order)
    derived = tuple(c.map_coefficients(lambda a: a.derivative()) for c in v.coordinates)
    return _apply(v, derived, images)


def connection_matrix(images: Sequence[BrieskornElement]) -> list[list[TruncatedLaurentSeries]]:
    """matrix[k][i] = k-th coordinate of the image of e_i."""
    return [[image.coordinates[k] for image in images] for k in range(len(images))]
