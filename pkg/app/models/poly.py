"""Sparse multivariate polynomials over exact coefficient rings."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Literal

from app.core.exceptions import NotInvertibleError, TypeMismatchError
from app.models.rings import CoefficientRing

Exponent = tuple[int, ...]
OrderName = Literal["wdeg", "grlex", "grevlex"]


def weighted_degree(exponent: Exponent, weights: Sequence[Fraction]) -> Fraction:
    return sum((w * e for w, e in zip(weights, exponent, strict=True)), Fraction(0))


def divides(a: Exponent, b: Exponent) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b, strict=True))


def monomial_text(exponent: Exponent, variables: Sequence[str]) -> str:
    factors = []
    for name, e in zip(variables, exponent, strict=True):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class MonomialOrder:
    """A graded monomial order.

    ``wdeg`` compares weighted degree first and breaks ties by grevlex;
    ``grlex`` and ``grevlex`` use the total degree.
    """

    name: OrderName = "wdeg"
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.name == "wdeg" and self.weights is None:
            raise ValueError("The weighted order needs weights")

    def key(self, exponent: Exponent) -> tuple:
        degree = sum(exponent)
        revlex = tuple(-e for e in reversed(exponent))
        if self.name == "grlex":
            return (degree, exponent)
        if self.name == "grevlex":
            return (degree, revlex)
        assert self.weights is not None
        return (weighted_degree(exponent, self.weights), degree, revlex)


class MultiPoly:
    """A polynomial stored as {exponent tuple: nonzero coefficient}."""

    __slots__ = ("_terms", "ring", "variables")

    def __init__(
        self,
        ring: CoefficientRing,
        variables: Sequence[str],
        terms: Mapping[Exponent, Any] | Iterable[tuple[Exponent, Any]] | None = None,
    ):
        self.ring = ring
        self.variables: tuple[str, ...] = tuple(variables)
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: dict[Exponent, Any] = {}
        n = len(self.variables)
        for exp, c in items:
            if len(exp) != n:
                raise ValueError(f"Exponent {exp} does not match variables {self.variables}")
            value = ring.coerce(c)
            if exp in clean:
                value = clean[exp] + value
            clean[tuple(exp)] = value
        self._terms = {e: c for e, c in clean.items() if c != 0}

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, ring: CoefficientRing, variables: Sequence[str]) -> MultiPoly:
        return cls(ring, variables)

    @classmethod
    def constant(cls, ring: CoefficientRing, variables: Sequence[str], value: Any) -> MultiPoly:
        return cls(ring, variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(
        cls, ring: CoefficientRing, variables: Sequence[str], exponent: Exponent, value: Any = 1
    ) -> MultiPoly:
        return cls(ring, variables, {tuple(exponent): value})

    @classmethod
    def gen(cls, ring: CoefficientRing, variables: Sequence[str], name: str) -> MultiPoly:
        index = list(variables).index(name)
        exp = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls.monomial(ring, variables, exp)

    def _new(self, terms: Mapping[Exponent, Any]) -> MultiPoly:
        poly = MultiPoly.__new__(MultiPoly)
        poly.ring = self.ring
        poly.variables = self.variables
        poly._terms = {e: c for e, c in terms.items() if c != 0}
        return poly

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Any]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: Exponent) -> Any:
        return self._terms.get(tuple(exponent), self.ring.zero())

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Exponent, Any]]:
        """Terms from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_term(self, order: MonomialOrder) -> tuple[Exponent, Any]:
        if not self._terms:
            raise ValueError("The zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda item: order.key(item[0]))

    def weighted_degree(self, weights: Sequence[Fraction]) -> Fraction:
        """Largest weighted degree of a term; -1 for the zero polynomial."""
        if not self._terms:
            return Fraction(-1)
        return max(weighted_degree(e, weights) for e in self._terms)

    def is_homogeneous(self, weights: Sequence[Fraction]) -> bool:
        return len({weighted_degree(e, weights) for e in self._terms}) <= 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if other.ring != self.ring:
            raise TypeMismatchError(self.ring, other.ring)
        if other.variables != self.variables:
            raise TypeMismatchError(self.variables, other.variables, "variables")

    def _as_poly(self, other: Any) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.ring, self.variables, other)

    def __add__(self, other: Any) -> MultiPoly:
        rhs = self._as_poly(other)
        out = dict(self._terms)
        for e, c in rhs._terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> MultiPoly:
        return self + (-self._as_poly(other))

    def __rsub__(self, other: Any) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other: Any) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            scalar = self.ring.coerce(other)
            return self._new({e: c * scalar for e, c in self._terms.items()})
        self._check(other)
        out: dict[Exponent, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2, strict=True))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("Negative powers of polynomials are not supported")
        result = MultiPoly.constant(self.ring, self.variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def mul_term(self, exponent: Exponent, coeff: Any) -> MultiPoly:
        """Multiply by coeff * x^exponent."""
        return self._new(
            {
                tuple(a + b for a, b in zip(e, exponent, strict=True)): c * coeff
                for e, c in self._terms.items()
            }
        )

    def derivative(self, index: int) -> MultiPoly:
        out = {}
        for e, c in self._terms.items():
            if e[index] == 0:
                continue
            shifted = e[:index] + (e[index] - 1,) + e[index + 1 :]
            out[shifted] = self.ring.coerce(e[index]) * c
        return self._new(out)

    def map_coefficients(
        self, fn: Callable[[Any], Any], ring: CoefficientRing | None = None
    ) -> MultiPoly:
        """Apply fn to every coefficient, landing in ring (default: own ring)."""
        target = ring or self.ring
        return MultiPoly(target, self.variables, {e: fn(c) for e, c in self._terms.items()})

    def change_ring(self, ring: CoefficientRing) -> MultiPoly:
        return self.map_coefficients(lambda c: c, ring)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return (
                self.ring == other.ring
                and self.variables == other.variables
                and self._terms == other._terms
            )
        try:
            return self == MultiPoly.constant(self.ring, self.variables, other)
        except (TypeMismatchError, NotInvertibleError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.variables, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_text(self, order: MonomialOrder | None = None) -> str:
        order = order or MonomialOrder("grevlex")
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = monomial_text(e, self.variables)
            if mono == "1":
                pieces.append(f"{c}")
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PolynomialRing(CoefficientRing):
    """A[x_1..x_n] used as a base ring for Witt vectors over polynomial rings."""

    coefficients: CoefficientRing
    variables: tuple[str, ...]

    def coerce(self, value: Any) -> MultiPoly:
        if isinstance(value, MultiPoly):
            if value.ring != self.coefficients or value.variables != self.variables:
                raise TypeMismatchError(self, value.ring)
            return value
        return MultiPoly.constant(self.coefficients, self.variables, value)

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.gen(self.coefficients, self.variables, name)

    def is_unit(self, value: Any) -> bool:
        poly = self.coerce(value)
        zero = (0,) * len(self.variables)
        return set(poly.terms) == {zero} and self.coefficients.is_unit(poly.terms[zero])

    def inverse(self, value: Any) -> MultiPoly:
        if not self.is_unit(value):
            raise NotInvertibleError(value, "only unit constants are invertible")
        poly = self.coerce(value)
        zero = (0,) * len(self.variables)
        return MultiPoly.constant(
            self.coefficients, self.variables, self.coefficients.inverse(poly.terms[zero])
        )

    def tag(self) -> str:
        return f"{self.coefficients.tag()}[{','.join(self.variables)}]"
