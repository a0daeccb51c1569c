"""Milnor algebra, Grothendieck residue and the classical residue pairing."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any

from app.core.exceptions import DenominatorNotInvertibleError, InternalInconsistencyError
from app.models.poly import Exponent, MultiPoly
from app.models.rings import CoefficientRing, ModRingElement, ModularRing, p_valuation
from app.services.groebner import normal_form
from app.services.singularity import FamilyDeformation, QHSingularity, family_division

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[Any, ...], ...]


def hessian(singularity: QHSingularity) -> MultiPoly:
    """Determinant of the matrix of second partials of f."""
    f = singularity.f
    n = f.nvars
    entries = [[f.derivative(i).derivative(j) for j in range(n)] for i in range(n)]
    return laplace_determinant(entries, MultiPoly.constant(f.ring, f.variables, 1))


def laplace_determinant(entries: Sequence[Sequence[Any]], one: Any) -> Any:
    """Cofactor expansion along rows, memoized on the set of remaining columns."""
    n = len(entries)
    memo: dict[tuple[int, ...], Any] = {}

    def minor(row: int, columns: tuple[int, ...]) -> Any:
        if row == n:
            return one
        if columns in memo:
            return memo[columns]
        total = one * 0
        for position, col in enumerate(columns):
            entry = entries[row][col]
            if entry == 0:
                continue
            rest = columns[:position] + columns[position + 1 :]
            term = entry * minor(row + 1, rest)
            total = total - term if position % 2 else total + term
        memo[columns] = total
        return total

    return minor(0, tuple(range(n)))


def unit_determinant(matrix: Sequence[Sequence[Any]], ring: CoefficientRing) -> Any | None:
    """Determinant by elimination with unit pivots; None when it is not a unit.

    Over Q this means "nonzero". Over Z/p^m a column without a unit pivot makes
    the determinant vanish modulo p.
    """
    rows = [[ring.coerce(a) for a in row] for row in matrix]
    n = len(rows)
    det = ring.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if ring.is_unit(rows[r][col])), None)
        if pivot is None:
            return None
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        lead = rows[col][col]
        det = det * lead
        inverse = ring.inverse(lead)
        for r in range(col + 1, n):
            factor = rows[r][col] * inverse
            if factor != 0:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col], strict=True)]
    return det


@dataclass(frozen=True, eq=False)
class MilnorAlgebra:
    """Jacobian quotient of a QH singularity with its residue functional."""

    singularity: QHSingularity

    @property
    def ring(self) -> CoefficientRing:
        return self.singularity.ring

    @property
    def basis(self) -> tuple[Exponent, ...]:
        return self.singularity.milnor_basis

    @property
    def mu(self) -> int:
        return len(self.basis)

    @cached_property
    def basis_polys(self) -> tuple[MultiPoly, ...]:
        f = self.singularity.f
        return tuple(MultiPoly.monomial(f.ring, f.variables, e) for e in self.basis)

    @cached_property
    def socle_index(self) -> int:
        degrees = [self.singularity.weighted_degree(e) for e in self.basis]
        top = max(degrees)
        indices = [i for i, d in enumerate(degrees) if d == top]
        if len(indices) != 1:
            raise InternalInconsistencyError(
                f"top weighted degree {top} is {len(indices)}-dimensional"
            )
        return indices[0]

    @property
    def socle(self) -> Exponent:
        return self.basis[self.socle_index]

    def coordinates(self, g: MultiPoly) -> tuple[Any, ...]:
        """Coordinates of NF(g) in the monomial basis."""
        remainder = normal_form(g, self.singularity.groebner)
        return tuple(remainder.coefficient(e) for e in self.basis)

    @cached_property
    def multiplication_table(self) -> tuple[tuple[tuple[Any, ...], ...], ...]:
        """table[i][j] = coordinates of NF(phi_i * phi_j)."""
        polys = self.basis_polys
        return tuple(tuple(self.coordinates(a * b) for b in polys) for a in polys)

    @cached_property
    def hessian(self) -> MultiPoly:
        return hessian(self.singularity)

    @cached_property
    def hessian_socle_coefficient(self) -> Any:
        """c with NF(hess f) = c * socle; any other component is an inconsistency."""
        coords = self.coordinates(self.hessian)
        for i, c in enumerate(coords):
            if i != self.socle_index and c != 0:
                raise InternalInconsistencyError(
                    "normal form of the Hessian is not a multiple of the socle monomial"
                )
        return coords[self.socle_index]

    @cached_property
    def residue_scale(self) -> Any:
        """mu / c, so that res(hess f) = mu."""
        c = self.hessian_socle_coefficient
        ring = self.ring
        if ring.is_unit(c):
            return ring.coerce(self.mu) * ring.inverse(c)
        if not isinstance(ring, ModularRing):
            raise InternalInconsistencyError("the Hessian vanishes in the Milnor algebra")
        return self._elevated_scale(ring, c)

    def _elevated_scale(self, ring: ModularRing, c: ModRingElement) -> ModRingElement:
        """Recover mu / c when c is a non-unit by recomputing it at level m + v_p(mu)."""
        v = p_valuation(self.mu, ring.p)
        if v == 0 or self.singularity.precision_lift is None:
            raise DenominatorNotInvertibleError(c, ring.modulus)
        level = ring.m + v
        logger.info(f"Hessian coefficient {c} is not a unit; normalizing at level {level}")
        lifted = milnor_algebra(self.singularity.at_level(level))
        c_lifted = lifted.hessian_socle_coefficient
        w = c_lifted.valuation()
        if w > v:
            raise DenominatorNotInvertibleError(c, ring.modulus)
        unit_part = ModRingElement(c_lifted.value // ring.p**w, ring.p, ring.m)
        return ring.coerce(self.mu // ring.p**w) * unit_part.inverse()

    def socle_coefficient(self, g: MultiPoly) -> Any:
        return normal_form(g, self.singularity.groebner).coefficient(self.socle)

    def residue(self, g: MultiPoly) -> Any:
        return self.socle_coefficient(g) * self.residue_scale


@lru_cache(maxsize=64)
def milnor_algebra(singularity: QHSingularity) -> MilnorAlgebra:
    """Shared MilnorAlgebra for a validated singularity."""
    algebra = MilnorAlgebra(singularity)
    logger.info(f"Milnor algebra of dimension {algebra.mu}, socle {algebra.socle}")
    return algebra


def groth_residue(g: MultiPoly, algebra: MilnorAlgebra) -> Any:
    """Grothendieck residue normalized by res(hess f) = mu."""
    return algebra.residue(g)


def residue_pairing_matrix(algebra: MilnorAlgebra) -> Matrix:
    """Entries res(phi_i * phi_j); raises if the matrix is degenerate."""
    polys = algebra.basis_polys
    matrix = tuple(tuple(algebra.residue(a * b) for b in polys) for a in polys)
    if unit_determinant(matrix, algebra.ring) is None:
        raise InternalInconsistencyError("residue pairing is degenerate")
    return matrix


def bp_residue_oracle(exponents: Sequence[int], degrees: Sequence[int]) -> Fraction:
    """Residue of x^k for the Brieskorn-Pham germ sum x_i^(a_i), in closed form."""
    value = Fraction(1)
    for k, a in zip(exponents, degrees, strict=True):
        if k != a - 2:
            return Fraction(0)
        value /= a
    return value


def _pure_power_cofactors(
    algebra: MilnorAlgebra, family: FamilyDeformation
) -> tuple[Exponent, tuple[tuple[MultiPoly, ...], ...]]:
    """Exponents N_j with x_j^(N_j) = sum_i C_ji d_i f_s, together with the rows C_j.

    A part of weighted degree above socle + k dies by s^k, so N_j * w_j > socle + M
    always works.
    """
    sing = algebra.singularity
    top = sing.weighted_degree(algebra.socle)
    variables = sing.variables
    exponents = []
    rows = []
    for j, w in enumerate(sing.weights):
        start = max(e[j] for e in algebra.basis) + 1
        bound = max(start, (top + family.sorder) // w + 1)
        for power in range(start, bound + 1):
            exp = tuple(power if i == j else 0 for i in range(sing.nvars))
            remainder, cofactors = family_division(
                MultiPoly.monomial(sing.ring, variables, exp), family
            )
            if remainder.is_zero:
                break
        else:
            raise InternalInconsistencyError(
                f"no power of {variables[j]} up to {bound} lies in Jac(f_s)"
            )
        exponents.append(power)
        rows.append(cofactors)
    return tuple(exponents), tuple(rows)


def family_residue_pairing(algebra: MilnorAlgebra, family: FamilyDeformation) -> Matrix:
    """Residue pairing of f_s with s-coefficients.

    With x^N = C * grad(f_s) the residue of h is the x^(N-1) coefficient of h * det C.
    """
    exponents, rows = _pure_power_cofactors(algebra, family)
    variables = algebra.singularity.variables
    det = laplace_determinant(rows, MultiPoly.constant(family.ring, variables, 1))
    corner = tuple(n - 1 for n in exponents)
    polys = [family.lift(a) for a in algebra.basis_polys]
    logger.debug(f"Family residue read off at x^{corner} for sorder {family.sorder}")
    return tuple(tuple((a * b * det).coefficient(corner) for b in polys) for a in polys)


def spectrum(algebra: MilnorAlgebra) -> tuple[Fraction, ...]:
    """Eigenvalues |w| + deg_w phi_i of the t d/dt connection on the monomial basis."""
    sing = algebra.singularity
    return tuple(sing.total_weight + sing.weighted_degree(e) for e in algebra.basis)


def is_spectrum_symmetric(values: Sequence[Fraction], nvars: int) -> bool:
    """The spectrum is symmetric about n/2."""
    return sorted(values) == sorted(nvars - a for a in values)
