"""Universal Witt polynomials and arithmetic in W_m(A).

The sum, product and negation polynomials S_k, P_k, I_k are solved from the
ghost equations over sympy's integer polynomial rings, one component at a time:

    p^k S_k = w_k(X) + w_k(Y) - sum_{i<k} p^i S_i^(p^(k-i))

and likewise for P_k and I_k. Each division by p^k must be exact.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal

from sympy import ZZ
from sympy.polys.rings import PolyElement, ring

from app.core.exceptions import IntegralityViolationError, UnsupportedError
from app.models.poly import PolynomialRing
from app.models.rings import ModRingElement, ModularRing, modular_ring
from app.models.witt import WittVector, ghost_inverse, ghost_map, is_torsion_free

logger = logging.getLogger(__name__)

WittOp = Literal["add", "mul", "neg"]
Term = tuple[tuple[int, ...], int]


@dataclass(frozen=True, eq=False)
class WittPolynomialTable:
    """S_0..S_n, P_0..P_n and I_0..I_n in Z[X_0..X_n, Y_0..Y_n]."""

    p: int
    depth: int
    sums: tuple[PolyElement, ...]
    products: tuple[PolyElement, ...]
    negations: tuple[PolyElement, ...]

    def polynomials(self, op: WittOp) -> tuple[PolyElement, ...]:
        return {"add": self.sums, "mul": self.products, "neg": self.negations}[op]

    @property
    def is_integral(self) -> bool:
        return all(
            int(c) == c
            for family in (self.sums, self.products, self.negations)
            for poly in family
            for c in poly.coeffs()
        )

    def terms(self, op: WittOp, k: int) -> tuple[Term, ...]:
        return _terms(self, op, k)


@lru_cache(maxsize=None)
def _terms(table: WittPolynomialTable, op: WittOp, k: int) -> tuple[Term, ...]:
    return tuple((tuple(monom), int(c)) for monom, c in table.polynomials(op)[k].terms())


def variable_names(depth: int) -> list[str]:
    return [f"X{i}" for i in range(depth + 1)] + [f"Y{i}" for i in range(depth + 1)]


def _ghost(values: Sequence[PolyElement], p: int, k: int) -> PolyElement:
    return sum((p**i * values[i] ** (p ** (k - i)) for i in range(k + 1)), values[0] * 0)


def _solve(
    kind: str,
    p: int,
    depth: int,
    targets: Sequence[PolyElement],
) -> tuple[PolyElement, ...]:
    solved: list[PolyElement] = []
    for k, target in enumerate(targets):
        numerator = target - sum(
            (p**i * solved[i] ** (p ** (k - i)) for i in range(k)), target * 0
        )
        modulus = p**k
        if any(int(c) % modulus for c in numerator.coeffs()):
            raise IntegralityViolationError(p, k, kind)
        solved.append(numerator.quo_ground(modulus))
    logger.debug(f"Solved {kind}_0..{kind}_{depth} for p = {p}")
    return tuple(solved)


@lru_cache(maxsize=None)
def universal_witt_polynomials(p: int, depth: int) -> WittPolynomialTable:
    """Witt addition, multiplication and negation polynomials up to index depth."""
    if depth < 0:
        raise ValueError(f"Depth must be non-negative, got {depth}")
    modular_ring(p)
    _, *gens = ring(",".join(variable_names(depth)), ZZ)
    xs, ys = gens[: depth + 1], gens[depth + 1 :]
    ghost_x = [_ghost(xs, p, k) for k in range(depth + 1)]
    ghost_y = [_ghost(ys, p, k) for k in range(depth + 1)]

    table = WittPolynomialTable(
        p=p,
        depth=depth,
        sums=_solve("S", p, depth, [a + b for a, b in zip(ghost_x, ghost_y, strict=True)]),
        products=_solve("P", p, depth, [a * b for a, b in zip(ghost_x, ghost_y, strict=True)]),
        negations=_solve("I", p, depth, [-a for a in ghost_x]),
    )
    logger.info(f"Built Witt polynomial table for p = {p}, depth {depth}")
    return table


def _evaluate(terms: Sequence[Term], values: Sequence[Any], base: Any) -> Any:
    powers: dict[tuple[int, int], Any] = {}

    def power(index: int, exponent: int) -> Any:
        key = (index, exponent)
        if key not in powers:
            powers[key] = values[index] ** exponent
        return powers[key]

    total = base.zero()
    for exponents, coeff in terms:
        if any(e and values[i] == 0 for i, e in enumerate(exponents)):
            continue
        term = base.coerce(coeff)
        for i, e in enumerate(exponents):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


def witt_arith(x: WittVector, y: WittVector | None, op: WittOp) -> WittVector:
    """Witt sum, product or additive inverse, component by component."""
    if op == "neg":
        y = x
    if y is None:
        raise ValueError(f"Witt {op} needs two operands")
    x.check_compatible(y)
    table = universal_witt_polynomials(x.p, x.length - 1)
    values = x.components + y.components
    components = tuple(
        _evaluate(table.terms(op, k), values, x.base) for k in range(x.length)
    )
    return WittVector(x.p, x.base, components)


def witt_add(x: WittVector, y: WittVector) -> WittVector:
    return witt_arith(x, y, "add")


def witt_mul(x: WittVector, y: WittVector) -> WittVector:
    return witt_arith(x, y, "mul")


def witt_neg(x: WittVector) -> WittVector:
    return witt_arith(x, None, "neg")


def witt_multiple(k: int, x: WittVector) -> WittVector:
    """k * x by double-and-add."""
    if k < 0:
        return witt_multiple(-k, witt_neg(x))
    result = WittVector.zero(x.p, x.base, x.length)
    addend = x
    while k:
        if k & 1:
            result = witt_add(result, addend)
        k >>= 1
        if k:
            addend = witt_add(addend, addend)
    return result


def _is_fp_algebra(base: Any, p: int) -> bool:
    if isinstance(base, PolynomialRing):
        base = base.coefficients
    return isinstance(base, ModularRing) and base.p == p and base.m == 1


def frobenius(x: WittVector) -> WittVector:
    """F with ghost(F x)_k = ghost(x)_{k+1}.

    Over F_p-algebras F raises every component to the p-th power and keeps the
    length. Over Q it goes through the ghost map and loses one component.
    """
    if _is_fp_algebra(x.base, x.p):
        return WittVector(x.p, x.base, tuple(a**x.p for a in x.components))
    if is_torsion_free(x.base):
        if x.length < 2:
            raise ValueError("Frobenius over Q needs a Witt vector of length at least 2")
        ghost = ghost_map(x)
        return ghost_inverse(x.p, ghost[1:], x.base)
    raise UnsupportedError("frobenius", x.base)


def teichmuller_representative(a: int, p: int, m: int) -> int:
    """The (p-1)-th root of unity (or 0) in Z/p^m congruent to a mod p."""
    modulus = p**m
    return pow(a % p, p ** (m - 1), modulus)


def witt_to_zpm(x: WittVector) -> ModRingElement:
    """The isomorphism W_m(F_p) -> Z/p^m, (a_i) -> sum p^i [a_i]."""
    if not (isinstance(x.base, ModularRing) and _is_fp_algebra(x.base, x.p)):
        raise UnsupportedError("witt_to_zpm", x.base)
    m = x.length
    total = sum(
        x.p**i * teichmuller_representative(int(a), x.p, m) for i, a in enumerate(x.components)
    )
    return ModRingElement(total, x.p, m)


def zpm_to_witt(value: ModRingElement) -> WittVector:
    """Inverse of witt_to_zpm: peel off one Teichmüller digit at a time."""
    p, m = value.p, value.m
    rest = value.value
    digits = []
    for level in range(m, 0, -1):
        digit = rest % p
        digits.append(digit)
        rest = (rest - teichmuller_representative(digit, p, level)) % p**level // p
    return WittVector(p, modular_ring(p), tuple(digits))
