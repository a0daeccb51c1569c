"""Quasi-homogeneous isolated singularities and their one-parameter deformations."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from app.core.exceptions import InternalInconsistencyError, NotQuasiHomogeneousError
from app.models.poly import (
    Exponent,
    MonomialOrder,
    MultiPoly,
    OrderName,
    monomial_text,
    weighted_degree,
)
from app.models.rings import CoefficientRing, TruncatedPoly, TruncatedPolyRing
from app.services.groebner import GroebnerData, buchberger, normal_form_with_cofactors

logger = logging.getLogger(__name__)

PrecisionLift = Callable[[int], MultiPoly]


@dataclass(frozen=True, eq=False)
class QHSingularity:
    """A validated germ f with weights w such that f = sum w_i x_i d_i f.

    ``precision_lift`` rebuilds f over Z/p^level; it is set when f was obtained by
    base change from Q or F_p and lets residue normalization run at higher precision.
    """

    f: MultiPoly
    weights: tuple[Fraction, ...]
    groebner: GroebnerData
    order_name: OrderName = "wdeg"
    precision_lift: PrecisionLift | None = None

    @property
    def ring(self) -> CoefficientRing:
        return self.f.ring

    @property
    def variables(self) -> tuple[str, ...]:
        return self.f.variables

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def order(self) -> MonomialOrder:
        return self.groebner.order

    @property
    def total_weight(self) -> Fraction:
        """|w| = sum of the weights."""
        return sum(self.weights, Fraction(0))

    @cached_property
    def jacobian(self) -> tuple[MultiPoly, ...]:
        return tuple(self.f.derivative(i) for i in range(self.nvars))

    def weighted_degree(self, exponent: Exponent) -> Fraction:
        return weighted_degree(exponent, self.weights)

    @cached_property
    def milnor_basis(self) -> tuple[Exponent, ...]:
        return milnor_basis(self.groebner, self.weights)

    @property
    def milnor_number(self) -> int:
        return len(self.milnor_basis)

    def at_level(self, level: int) -> "QHSingularity":
        """The same germ rebuilt over Z/p^level through precision_lift."""
        if self.precision_lift is None:
            raise InternalInconsistencyError("no precision lift is attached to this singularity")
        return qh_check(
            self.precision_lift(level),
            self.weights,
            order_name=self.order_name,
            precision_lift=self.precision_lift,
        )


def monomial_order(name: OrderName, weights: Sequence[Fraction]) -> MonomialOrder:
    if name == "wdeg":
        return MonomialOrder("wdeg", tuple(weights))
    return MonomialOrder(name)


def _validate_weights(f: MultiPoly, weights: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(weights) != f.nvars:
        raise NotQuasiHomogeneousError(
            f"expected {f.nvars} weights for variables {', '.join(f.variables)}, got {len(weights)}"
        )
    checked = tuple(Fraction(w) for w in weights)
    for name, w in zip(f.variables, checked, strict=True):
        if not 0 < w <= Fraction(1, 2):
            raise NotQuasiHomogeneousError(f"weight {w} of {name} is outside (0, 1/2]")
    return checked


def _euler_defect(f: MultiPoly, weights: Sequence[Fraction]) -> list[Exponent]:
    """Exponents whose term breaks f = sum w_i x_i d_i f.

    The term c*x^e contributes c*(1 - deg_w e) to f - sum w_i x_i d_i f.
    """
    return [e for e in f.terms if weighted_degree(e, weights) != 1]


def qh_check(
    f: MultiPoly,
    weights: Sequence[Fraction],
    order_name: OrderName = "wdeg",
    precision_lift: PrecisionLift | None = None,
) -> QHSingularity:
    """Validate f as an isolated quasi-homogeneous singularity of weighted degree 1."""
    checked = _validate_weights(f, weights)
    order = monomial_order(order_name, checked)
    jacobian = [f.derivative(i) for i in range(f.nvars)]
    groebner = buchberger(jacobian, order)
    groebner.require_finite()

    defect = _euler_defect(f, checked)
    if defect:
        worst = max(defect, key=order.key)
        raise NotQuasiHomogeneousError(
            f"term {monomial_text(worst, f.variables)} has weighted degree {weighted_degree(worst, checked)}, expected 1"
        )

    singularity = QHSingularity(
        f=f,
        weights=checked,
        groebner=groebner,
        order_name=order_name,
        precision_lift=precision_lift,
    )
    logger.info(
        f"Validated {f.to_text(order)} over {f.ring}: mu = {singularity.milnor_number}"
    )
    return singularity


def milnor_basis(data: GroebnerData, weights: Sequence[Fraction]) -> tuple[Exponent, ...]:
    """Staircase monomials sorted by weighted degree, then lexicographically (x before y)."""
    standard = data.require_finite()
    return tuple(
        sorted(standard, key=lambda e: (weighted_degree(e, weights), tuple(-a for a in e)))
    )


def milnor_number(data: GroebnerData) -> int:
    return len(data.require_finite())


@dataclass(frozen=True, eq=False)
class FamilyDeformation:
    """The family f_s = f + s*g with s nilpotent of order sorder."""

    singularity: QHSingularity
    g: MultiPoly
    sorder: int

    def __post_init__(self) -> None:
        if self.sorder < 1:
            raise ValueError(f"s-order must be positive, got {self.sorder}")
        if self.g.variables != self.singularity.variables:
            raise ValueError(
                f"Deformation uses variables {self.g.variables}, "
                f"expected {self.singularity.variables}"
            )

    @cached_property
    def ring(self) -> TruncatedPolyRing:
        return TruncatedPolyRing(self.singularity.ring, self.sorder)

    @cached_property
    def fs(self) -> MultiPoly:
        s = self.ring.gen()
        return self.lift(self.singularity.f) + self.lift(self.g) * s

    @cached_property
    def jacobian(self) -> tuple[MultiPoly, ...]:
        return tuple(self.fs.derivative(i) for i in range(self.fs.nvars))

    @cached_property
    def direction(self) -> MultiPoly:
        """d f_s / ds = g, as a polynomial with s-coefficients."""
        return self.lift(self.g)

    def lift(self, poly: MultiPoly, power: int = 0) -> MultiPoly:
        """Embed a polynomial over the base ring as s^power * poly."""
        if poly.ring == self.ring:
            if power:
                return poly * TruncatedPoly(self.ring, [0] * power + [1])
            return poly
        return MultiPoly(
            self.ring,
            poly.variables,
            {e: TruncatedPoly(self.ring, [0] * power + [c]) for e, c in poly.terms.items()},
        )

    def s_part(self, poly: MultiPoly, power: int) -> MultiPoly:
        """Coefficient of s^power, a polynomial over the base ring."""
        return MultiPoly(
            self.singularity.ring,
            poly.variables,
            {e: c.coefficient(power) for e, c in poly.terms.items()},
        )


def family_division(
    g: MultiPoly, family: FamilyDeformation
) -> tuple[MultiPoly, tuple[MultiPoly, ...]]:
    """Divide g by Jac(f_s) modulo s^M.

    Each round divides the lowest surviving s^k part by Jac(f) and subtracts the
    full correction s^k * (sum b_i d_i f_s + r_k), which pushes the error to higher
    s-order. Returns (r, a) with g = sum a_i d_i f_s + r and r on the s^0 staircase.
    """
    current = family.lift(g)
    groebner = family.singularity.groebner
    zero = MultiPoly.zero(family.ring, g.variables)
    remainder = zero
    cofactors = [zero] * family.singularity.nvars
    for k in range(family.sorder):
        part = family.s_part(current, k)
        if part.is_zero:
            continue
        r_k, b_k = normal_form_with_cofactors(part, groebner)
        lifted_r = family.lift(r_k, k)
        lifted_b = [family.lift(b, k) for b in b_k]
        remainder = remainder + lifted_r
        cofactors = [a + b for a, b in zip(cofactors, lifted_b, strict=True)]
        correction = lifted_r + sum(
            (b * d for b, d in zip(lifted_b, family.jacobian, strict=True)), zero
        )
        current = current - correction
        logger.debug(f"Family division round {k}: remainder {r_k.to_text()}")

    if not current.is_zero:
        raise InternalInconsistencyError("family division left a residual term")
    return remainder, tuple(cofactors)
