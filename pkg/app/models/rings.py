"""Exact coefficient rings: Q, Z/p^m and truncated polynomial rings A[s]/(s^M)."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, wraps
from typing import Any

from sympy import isprime

from app.core.exceptions import (
    DenominatorNotInvertibleError,
    NotInvertibleError,
    TypeMismatchError,
)


def extgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (x, y, d) with a*x + b*y = d = gcd(a, b)."""
    if abs(b) > abs(a):
        y, x, d = extgcd(b, a)
        return x, y, d

    if b == 0:
        return 1, 0, a

    x1, x2, y1, y2 = 0, 1, 1, 0
    while b != 0:
        q, r = divmod(a, b)
        x = x2 - q * x1
        y = y2 - q * y1
        a, b, x2, x1, y2, y1 = b, r, x1, x, y1, y

    return x2, y2, a


def p_valuation(value: int, p: int) -> int:
    """Return v_p(value) for a nonzero integer."""
    if value == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


def _coerce_other(func: Callable) -> Callable:
    @wraps(func)
    def method(self: ModRingElement, other: Any) -> Any:
        if isinstance(other, ModRingElement):
            if (other.p, other.m) != (self.p, self.m):
                raise TypeMismatchError(self.ring, other.ring)
        elif isinstance(other, int | Fraction):
            other = self.ring.coerce(other)
        else:
            return NotImplemented
        return func(self, other)

    return method


@dataclass(frozen=True, slots=True, eq=False)
class ModRingElement:
    """An element of Z/p^m stored as its least non-negative residue."""

    value: int
    p: int
    m: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p**self.m)

    @property
    def modulus(self) -> int:
        return self.p**self.m

    @property
    def ring(self) -> ModularRing:
        return modular_ring(self.p, self.m)

    def _make(self, value: int) -> ModRingElement:
        return ModRingElement(value, self.p, self.m)

    @_coerce_other
    def __add__(self, other: ModRingElement) -> ModRingElement:
        return self._make(self.value + other.value)

    @_coerce_other
    def __radd__(self, other: ModRingElement) -> ModRingElement:
        return self._make(other.value + self.value)

    @_coerce_other
    def __sub__(self, other: ModRingElement) -> ModRingElement:
        return self._make(self.value - other.value)

    @_coerce_other
    def __rsub__(self, other: ModRingElement) -> ModRingElement:
        return self._make(other.value - self.value)

    @_coerce_other
    def __mul__(self, other: ModRingElement) -> ModRingElement:
        return self._make(self.value * other.value)

    @_coerce_other
    def __rmul__(self, other: ModRingElement) -> ModRingElement:
        return self._make(other.value * self.value)

    @_coerce_other
    def __truediv__(self, other: ModRingElement) -> ModRingElement:
        return self * other.inverse()

    @_coerce_other
    def __rtruediv__(self, other: ModRingElement) -> ModRingElement:
        return other * self.inverse()

    def __neg__(self) -> ModRingElement:
        return self._make(-self.value)

    def __pow__(self, exponent: int) -> ModRingElement:
        if not isinstance(exponent, int):
            raise TypeError(f"Exponent must be an integer, got {exponent!r}")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._make(pow(self.value, exponent, self.modulus))

    def inverse(self) -> ModRingElement:
        x, _, d = extgcd(self.value, self.modulus)
        if abs(d) != 1:
            raise NotInvertibleError(self, f"shares the factor {self.p} with {self.modulus}")
        return self._make(x * d)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def valuation(self) -> int:
        """p-adic valuation of the residue, m when it is zero."""
        if self.value == 0:
            return self.m
        return p_valuation(self.value, self.p)

    def reduce(self, level: int) -> ModRingElement:
        """Image under Z/p^m -> Z/p^level."""
        if level > self.m:
            raise ValueError(f"Cannot reduce from level {self.m} to level {level}")
        return ModRingElement(self.value, self.p, level)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ModRingElement):
            return (self.p, self.m, self.value) == (other.p, other.m, other.value)
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                return False
            return self == self.ring.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


class CoefficientRing(ABC):
    """A commutative ring that polynomials and series take coefficients in."""

    is_field: bool = False

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Map an int, Fraction or own element into this ring."""

    @abstractmethod
    def is_unit(self, value: Any) -> bool:
        """Return True when value has a multiplicative inverse."""

    @abstractmethod
    def inverse(self, value: Any) -> Any:
        """Return the inverse or raise NotInvertibleError."""

    @abstractmethod
    def tag(self) -> str:
        """Short description used in reports."""

    def zero(self) -> Any:
        return self.coerce(0)

    def one(self) -> Any:
        return self.coerce(1)

    def is_zero(self, value: Any) -> bool:
        return value == 0

    def divide(self, numerator: Any, denominator: Any) -> Any:
        return self.coerce(numerator) * self.inverse(self.coerce(denominator))

    def __str__(self) -> str:
        return self.tag()


@dataclass(frozen=True)
class RationalField(CoefficientRing):
    """The field Q with Fraction elements."""

    is_field = True

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeMismatchError(self, value, "coefficient")

    def is_unit(self, value: Any) -> bool:
        return value != 0

    def inverse(self, value: Any) -> Fraction:
        if value == 0:
            raise NotInvertibleError(value, "zero has no inverse")
        return 1 / Fraction(value)

    def tag(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class ModularRing(CoefficientRing):
    """Z/p^m; F_p when m = 1. Realizes W_m(F_p)."""

    p: int
    m: int = 1

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not a prime")
        if self.m < 1:
            raise ValueError(f"Precision level must be positive, got {self.m}")

    @property
    def is_field(self) -> bool:  # type: ignore[override]
        return self.m == 1

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def coerce(self, value: Any) -> ModRingElement:
        if isinstance(value, ModRingElement):
            if (value.p, value.m) != (self.p, self.m):
                raise TypeMismatchError(self, value.ring)
            return value
        if isinstance(value, int):
            return ModRingElement(value, self.p, self.m)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DenominatorNotInvertibleError(value, self.modulus)
            numerator = ModRingElement(value.numerator, self.p, self.m)
            return numerator * ModRingElement(value.denominator, self.p, self.m).inverse()
        raise TypeMismatchError(self, value, "coefficient")

    def is_unit(self, value: Any) -> bool:
        return self.coerce(value).is_unit()

    def inverse(self, value: Any) -> ModRingElement:
        return self.coerce(value).inverse()

    def at_level(self, level: int) -> ModularRing:
        return ModularRing(self.p, level)

    def tag(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"Z/{self.p}^{self.m}"


class TruncatedPoly:
    """An element of A[s]/(s^M), the coefficients of a one-parameter family."""

    __slots__ = ("coefficients", "ring")

    def __init__(self, ring: TruncatedPolyRing, coefficients: Sequence[Any]):
        base = ring.base
        coeffs = [base.coerce(c) for c in coefficients][: ring.order]
        coeffs.extend(base.zero() for _ in range(ring.order - len(coeffs)))
        self.ring = ring
        self.coefficients: tuple[Any, ...] = tuple(coeffs)

    def _coerce(self, other: Any) -> TruncatedPoly | None:
        if isinstance(other, TruncatedPoly):
            if other.ring != self.ring:
                raise TypeMismatchError(self.ring, other.ring)
            return other
        try:
            return self.ring.coerce(other)
        except TypeMismatchError:
            return None

    def __add__(self, other: Any) -> TruncatedPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return TruncatedPoly(
            self.ring, [a + b for a, b in zip(self.coefficients, rhs.coefficients, strict=True)]
        )

    __radd__ = __add__

    def __neg__(self) -> TruncatedPoly:
        return TruncatedPoly(self.ring, [-a for a in self.coefficients])

    def __sub__(self, other: Any) -> TruncatedPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> TruncatedPoly:
        return (-self) + other

    def __mul__(self, other: Any) -> TruncatedPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        order = self.ring.order
        zero = self.ring.base.zero()
        out = [zero] * order
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j in range(order - i):
                b = rhs.coefficients[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return TruncatedPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> TruncatedPoly:
        if exponent < 0:
            return self.ring.inverse(self) ** (-exponent)
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def coefficient(self, k: int) -> Any:
        return self.coefficients[k]

    def derivative(self) -> TruncatedPoly:
        """d/ds; exact modulo s^(M-1), the top coefficient becomes unknown (stored as 0)."""
        base = self.ring.base
        return TruncatedPoly(
            self.ring,
            [base.coerce(k) * c for k, c in enumerate(self.coefficients) if k > 0],
        )

    def truncate(self, order: int) -> TruncatedPoly:
        """Zero out s^k for k >= order, keeping the ring."""
        return TruncatedPoly(self.ring, self.coefficients[:order])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedPoly):
            return self.ring == other.ring and self.coefficients == other.coefficients
        try:
            rhs = self.ring.coerce(other)
        except TypeMismatchError:
            return NotImplemented
        return self.coefficients == rhs.coefficients

    def __hash__(self) -> int:
        return hash((self.ring, self.coefficients))

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coefficients)

    def __repr__(self) -> str:
        terms = [
            f"{c}*{self.ring.name}^{k}" if k else f"{c}"
            for k, c in enumerate(self.coefficients)
            if c != 0
        ]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class TruncatedPolyRing(CoefficientRing):
    """A[s]/(s^order): parameter ring of a deformation f + s*g."""

    base: CoefficientRing
    order: int
    name: str = "s"

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"s-order must be positive, got {self.order}")

    def coerce(self, value: Any) -> TruncatedPoly:
        if isinstance(value, TruncatedPoly):
            if value.ring != self:
                raise TypeMismatchError(self, value.ring)
            return value
        return TruncatedPoly(self, [self.base.coerce(value)])

    def gen(self) -> TruncatedPoly:
        return TruncatedPoly(self, [0, 1])

    def is_unit(self, value: Any) -> bool:
        return self.base.is_unit(self.coerce(value).coefficients[0])

    def inverse(self, value: Any) -> TruncatedPoly:
        coeffs = self.coerce(value).coefficients
        if not self.base.is_unit(coeffs[0]):
            raise NotInvertibleError(value, "constant term is not a unit")
        b0 = self.base.inverse(coeffs[0])
        out = [b0]
        for k in range(1, self.order):
            acc = self.base.zero()
            for i in range(1, k + 1):
                acc = acc + coeffs[i] * out[k - i]
            out.append(-b0 * acc)
        return TruncatedPoly(self, out)

    def tag(self) -> str:
        return f"{self.base.tag()}[{self.name}]/({self.name}^{self.order})"


@lru_cache(maxsize=None)
def modular_ring(p: int, m: int = 1) -> ModularRing:
    """Shared ModularRing instance for (p, m)."""
    return ModularRing(p, m)


QQ = RationalField()
