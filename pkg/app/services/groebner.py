"""Buchberger's algorithm with cofactor tracking and division by a Gröbner basis."""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from app.core.exceptions import (
    DenominatorNotInvertibleError,
    InternalInconsistencyError,
    NotIsolatedError,
)
from app.models.poly import Exponent, MonomialOrder, MultiPoly, divides
from app.models.rings import ModularRing

logger = logging.getLogger(__name__)

Cofactors = tuple[MultiPoly, ...]


@dataclass(frozen=True, eq=False)
class GroebnerData:
    """Reduced Gröbner basis of an ideal together with its expression in the generators.

    ``basis[k] == sum(cofactors[k][i] * generators[i])`` holds exactly.
    """

    generators: tuple[MultiPoly, ...]
    basis: tuple[MultiPoly, ...]
    cofactors: tuple[Cofactors, ...]
    order: MonomialOrder
    leading: tuple[Exponent, ...]
    staircase: tuple[Exponent, ...] | None

    @property
    def is_finite(self) -> bool:
        return self.staircase is not None

    def missing_pure_powers(self) -> list[str]:
        """Variables with no pure power among the leading monomials."""
        variables = self.generators[0].variables
        missing = []
        for i, name in enumerate(variables):
            if not any(_is_pure_power(lm, i) for lm in self.leading):
                missing.append(name)
        return missing

    def require_finite(self) -> tuple[Exponent, ...]:
        if self.staircase is None:
            raise NotIsolatedError(self.missing_pure_powers())
        return self.staircase


def _is_pure_power(exponent: Exponent, index: int) -> bool:
    return exponent[index] > 0 and all(e == 0 for j, e in enumerate(exponent) if j != index)


def _unit_coefficient(poly: MultiPoly, order: MonomialOrder) -> Any:
    _, lc = poly.leading_term(order)
    ring = poly.ring
    if not ring.is_unit(lc):
        modulus = ring.modulus if isinstance(ring, ModularRing) else None
        raise DenominatorNotInvertibleError(lc, modulus)
    return ring.inverse(lc)


def _combine(
    cofactor_rows: Sequence[Cofactors], weights: Sequence[MultiPoly], template: Cofactors
) -> Cofactors:
    """sum_k weights[k] * cofactor_rows[k], component by component."""
    out = list(template)
    for row, weight in zip(cofactor_rows, weights, strict=True):
        if weight.is_zero:
            continue
        out = [acc + weight * c for acc, c in zip(out, row, strict=True)]
    return tuple(out)


def divide(
    poly: MultiPoly, divisors: Sequence[MultiPoly], order: MonomialOrder
) -> tuple[MultiPoly, list[MultiPoly]]:
    """Full reduction of poly by divisors with unit leading coefficients.

    Returns (remainder, quotients) with poly = sum(q_k * divisors[k]) + remainder
    and no remainder term divisible by a leading monomial. The largest reducible
    term is always reduced first.
    """
    leads = [d.leading_term(order) for d in divisors]
    quotients = [MultiPoly.zero(poly.ring, poly.variables) for _ in divisors]
    remainder: dict[Exponent, Any] = {}
    current = poly
    while not current.is_zero:
        exp, coeff = current.leading_term(order)
        for k, (lm, lc) in enumerate(leads):
            if divides(lm, exp):
                shift = tuple(a - b for a, b in zip(exp, lm, strict=True))
                factor = coeff * current.ring.inverse(lc)
                quotients[k] = quotients[k] + MultiPoly.monomial(
                    poly.ring, poly.variables, shift, factor
                )
                current = current - divisors[k].mul_term(shift, factor)
                break
        else:
            remainder[exp] = coeff
            current = current - MultiPoly.monomial(poly.ring, poly.variables, exp, coeff)
    return MultiPoly(poly.ring, poly.variables, remainder), quotients


def _s_polynomial(
    f: MultiPoly, g: MultiPoly, order: MonomialOrder
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Return (S(f, g), u, v) with S = u*f - v*g for monic f and g."""
    lf, _ = f.leading_term(order)
    lg, _ = g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg, strict=True))
    u = MultiPoly.monomial(f.ring, f.variables, tuple(a - b for a, b in zip(lcm, lf, strict=True)))
    v = MultiPoly.monomial(f.ring, f.variables, tuple(a - b for a, b in zip(lcm, lg, strict=True)))
    return u * f - v * g, u, v


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b, strict=True))


def staircase(leading: Sequence[Exponent], nvars: int) -> tuple[Exponent, ...] | None:
    """Standard monomials of a monomial ideal; None when there are infinitely many."""
    bounds = []
    for i in range(nvars):
        powers = [lm[i] for lm in leading if _is_pure_power(lm, i)]
        if not powers:
            return None
        bounds.append(min(powers))
    standard = [
        exp
        for exp in itertools.product(*(range(b) for b in bounds))
        if not any(divides(lm, exp) for lm in leading)
    ]
    return tuple(standard)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder) -> GroebnerData:
    """Reduced Gröbner basis of the ideal generated by gens.

    Works over fields and over Z/p^m as long as every leading coefficient met on
    the way is a unit; otherwise DenominatorNotInvertibleError is raised.
    """
    generators = tuple(gens)
    if not generators:
        raise ValueError("At least one generator is required")
    ring, variables = generators[0].ring, generators[0].variables
    zero = MultiPoly.zero(ring, variables)
    one = MultiPoly.constant(ring, variables, 1)
    n = len(generators)
    unit_rows = tuple(
        tuple(one if i == k else zero for i in range(n)) for k in range(n)
    )

    basis: list[MultiPoly] = []
    rows: list[Cofactors] = []
    for gen, row in zip(generators, unit_rows, strict=True):
        if gen.is_zero:
            continue
        scale = _unit_coefficient(gen, order)
        basis.append(gen * scale)
        rows.append(tuple(c * scale for c in row))

    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        lead_i, _ = basis[i].leading_term(order)
        lead_j, _ = basis[j].leading_term(order)
        if _coprime(lead_i, lead_j):
            continue
        spoly, u, v = _s_polynomial(basis[i], basis[j], order)
        remainder, quotients = divide(spoly, basis, order)
        if remainder.is_zero:
            continue
        spoly_row = tuple(u * a - v * b for a, b in zip(rows[i], rows[j], strict=True))
        reduced_row = _combine(rows, [-q for q in quotients], spoly_row)
        scale = _unit_coefficient(remainder, order)
        basis.append(remainder * scale)
        rows.append(tuple(c * scale for c in reduced_row))
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))
        logger.debug(f"New basis element {basis[new].to_text(order)}")

    basis, rows = _minimize(basis, rows, order)
    basis, rows = _interreduce(basis, rows, order)

    leading = tuple(b.leading_term(order)[0] for b in basis)
    data = GroebnerData(
        generators=generators,
        basis=tuple(basis),
        cofactors=tuple(rows),
        order=order,
        leading=leading,
        staircase=staircase(leading, len(variables)),
    )
    _check_cofactors(data)
    logger.info(f"Gröbner basis with {len(basis)} elements over {ring}")
    return data


def _minimize(
    basis: list[MultiPoly], rows: list[Cofactors], order: MonomialOrder
) -> tuple[list[MultiPoly], list[Cofactors]]:
    leads = [b.leading_term(order)[0] for b in basis]
    keep = []
    for k, lm in enumerate(leads):
        redundant = any(
            divides(other, lm) and (other != lm or j < k)
            for j, other in enumerate(leads)
            if j != k
        )
        if not redundant:
            keep.append(k)
    return [basis[k] for k in keep], [rows[k] for k in keep]


def _interreduce(
    basis: list[MultiPoly],
    rows: list[Cofactors],
    order: MonomialOrder,
) -> tuple[list[MultiPoly], list[Cofactors]]:
    out_basis, out_rows = list(basis), list(rows)
    for k in range(len(out_basis)):
        lm, lc = out_basis[k].leading_term(order)
        head = MultiPoly.monomial(out_basis[k].ring, out_basis[k].variables, lm, lc)
        tail = out_basis[k] - head
        others = [b for j, b in enumerate(out_basis) if j != k]
        other_rows = [r for j, r in enumerate(out_rows) if j != k]
        reduced, quotients = divide(tail, others, order) if others else (tail, [])
        out_rows[k] = _combine(other_rows, [-q for q in quotients], out_rows[k])
        out_basis[k] = head + reduced
    order_key = [b.leading_term(order)[0] for b in out_basis]
    ranked = sorted(range(len(out_basis)), key=lambda k: order.key(order_key[k]), reverse=True)
    return [out_basis[k] for k in ranked], [out_rows[k] for k in ranked]


def _check_cofactors(data: GroebnerData) -> None:
    for element, row in zip(data.basis, data.cofactors, strict=True):
        rebuilt = sum(
            (c * g for c, g in zip(row, data.generators, strict=True)),
            MultiPoly.zero(element.ring, element.variables),
        )
        if rebuilt != element:
            raise InternalInconsistencyError(
                f"cofactors do not rebuild basis element {element.to_text(data.order)}"
            )


def normal_form_with_cofactors(
    g: MultiPoly, data: GroebnerData
) -> tuple[MultiPoly, tuple[MultiPoly, ...]]:
    """Divide g by the ideal: g = sum(a_i * generators[i]) + r with r on the staircase."""
    remainder, quotients = divide(g, data.basis, data.order)
    template = tuple(MultiPoly.zero(g.ring, g.variables) for _ in data.generators)
    cofactors = _combine(data.cofactors, quotients, template)
    rebuilt = remainder + sum(
        (a * gen for a, gen in zip(cofactors, data.generators, strict=True)),
        MultiPoly.zero(g.ring, g.variables),
    )
    if rebuilt != g:
        raise InternalInconsistencyError(f"division identity fails for {g.to_text(data.order)}")
    return remainder, cofactors


def normal_form(g: MultiPoly, data: GroebnerData) -> MultiPoly:
    remainder, _ = divide(g, data.basis, data.order)
    return remainder
