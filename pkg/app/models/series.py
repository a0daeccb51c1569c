"""Truncated Laurent series in t over an exact coefficient ring.

A value c_l t^l + ... + c_{N-1} t^{N-1} + O(t^N) stores its lower exponent l,
the coefficients c_l..c_{N-1} and the truncation order N. Coefficients at or
beyond N are unknown. Leading zeros are stripped on construction, so the
stored lower exponent is the valuation whenever a nonzero coefficient is
known; a series with no known nonzero coefficient has low == order.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any, Literal

from app.core.exceptions import NotInvertibleError, PrecisionLossError, TypeMismatchError
from app.models.rings import CoefficientRing


@dataclass(frozen=True, slots=True)
class TruncatedLaurentSeries:
    """An element of A((t)) known modulo t^order."""

    ring: CoefficientRing
    low: int
    coefficients: tuple[Any, ...]
    order: int

    def __post_init__(self) -> None:
        if self.low > self.order:
            raise ValueError(f"Lower exponent {self.low} exceeds order {self.order}")
        if len(self.coefficients) != self.order - self.low:
            raise ValueError(
                f"Expected {self.order - self.low} coefficients, got {len(self.coefficients)}"
            )
        skip = 0
        for c in self.coefficients:
            if c != 0:
                break
            skip += 1
        if skip:
            object.__setattr__(self, "low", self.low + skip)
            object.__setattr__(self, "coefficients", self.coefficients[skip:])

    # -- construction -----------------------------------------------------

    @classmethod
    def from_coefficients(
        cls,
        ring: CoefficientRing,
        coefficients: Sequence[Any],
        order: int | None = None,
        low: int = 0,
    ) -> TruncatedLaurentSeries:
        """Build c_low t^low + c_{low+1} t^{low+1} + ...; missing tail coefficients are 0."""
        if order is None:
            order = low + len(coefficients)
        coeffs = [ring.coerce(c) for c in coefficients[: max(order - low, 0)]]
        coeffs.extend(ring.zero() for _ in range(order - low - len(coeffs)))
        return cls(ring, low, tuple(coeffs), order)

    @classmethod
    def zero(cls, ring: CoefficientRing, order: int) -> TruncatedLaurentSeries:
        return cls(ring, order, (), order)

    @classmethod
    def constant(cls, ring: CoefficientRing, value: Any, order: int) -> TruncatedLaurentSeries:
        return cls.monomial(ring, value, 0, order)

    @classmethod
    def monomial(
        cls, ring: CoefficientRing, value: Any, exponent: int, order: int
    ) -> TruncatedLaurentSeries:
        if exponent >= order:
            return cls.zero(ring, order)
        return cls.from_coefficients(ring, [value], order, low=exponent)

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return not self.coefficients

    def coefficient(self, k: int) -> Any:
        if k >= self.order:
            raise PrecisionLossError(f"coefficient of t^{k} is beyond O(t^{self.order})")
        if k < self.low:
            return self.ring.zero()
        return self.coefficients[k - self.low]

    def items(self) -> Iterable[tuple[int, Any]]:
        for offset, c in enumerate(self.coefficients):
            if c != 0:
                yield self.low + offset, c

    def _check_ring(self, other: TruncatedLaurentSeries) -> None:
        if self.ring != other.ring:
            raise TypeMismatchError(self.ring, other.ring)

    def _lift(self, other: Any) -> TruncatedLaurentSeries | None:
        if isinstance(other, TruncatedLaurentSeries):
            self._check_ring(other)
            return other
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Any) -> TruncatedLaurentSeries:
        rhs = self._lift(other)
        if rhs is None:
            return self + TruncatedLaurentSeries.constant(self.ring, other, self.order)
        order = min(self.order, rhs.order)
        low = min(self.low, rhs.low, order)
        coeffs = [
            self._known(k) + rhs._known(k)
            for k in range(low, order)
        ]
        return TruncatedLaurentSeries(self.ring, low, tuple(coeffs), order)

    __radd__ = __add__

    def _known(self, k: int) -> Any:
        if k < self.low:
            return self.ring.zero()
        return self.coefficients[k - self.low]

    def __neg__(self) -> TruncatedLaurentSeries:
        return TruncatedLaurentSeries(
            self.ring, self.low, tuple(-c for c in self.coefficients), self.order
        )

    def __sub__(self, other: Any) -> TruncatedLaurentSeries:
        return self + (-other)

    def __rsub__(self, other: Any) -> TruncatedLaurentSeries:
        return (-self) + other

    def __mul__(self, other: Any) -> TruncatedLaurentSeries:
        rhs = self._lift(other)
        if rhs is None:
            scalar = self.ring.coerce(other)
            return TruncatedLaurentSeries(
                self.ring, self.low, tuple(scalar * c for c in self.coefficients), self.order
            )
        order = min(self.order + rhs.low, rhs.order + self.low)
        low = self.low + rhs.low
        zero = self.ring.zero()
        coeffs = [zero] * (order - low)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(rhs.coefficients):
                k = i + j
                if k >= order - low:
                    break
                if b != 0:
                    coeffs[k] = coeffs[k] + a * b
        return TruncatedLaurentSeries(self.ring, low, tuple(coeffs), order)

    __rmul__ = __mul__

    def shift(self, k: int) -> TruncatedLaurentSeries:
        """Multiply by t^k."""
        return TruncatedLaurentSeries(self.ring, self.low + k, self.coefficients, self.order + k)

    def truncate(self, order: int) -> TruncatedLaurentSeries:
        """Forget every coefficient at or beyond t^order."""
        if order > self.order:
            raise PrecisionLossError(f"cannot raise O(t^{self.order}) to O(t^{order})")
        if order <= self.low:
            return TruncatedLaurentSeries.zero(self.ring, order)
        return TruncatedLaurentSeries(
            self.ring, self.low, self.coefficients[: order - self.low], order
        )

    def invert(self) -> TruncatedLaurentSeries:
        """Multiplicative inverse; the leading coefficient must be a unit."""
        if self.is_zero:
            raise NotInvertibleError(self, "no nonzero coefficient is known")
        lead = self.coefficients[0]
        if not self.ring.is_unit(lead):
            raise NotInvertibleError(self, f"leading coefficient {lead} is not a unit")
        b0 = self.ring.inverse(lead)
        relative = self.order - self.low
        out = [b0]
        for k in range(1, relative):
            acc = self.ring.zero()
            for i in range(1, k + 1):
                acc = acc + self.coefficients[i] * out[k - i]
            out.append(-b0 * acc)
        return TruncatedLaurentSeries(self.ring, -self.low, tuple(out), relative - self.low)

    def conjugate(self) -> TruncatedLaurentSeries:
        """g(t) -> g(-t)."""
        coeffs = tuple(
            -c if (self.low + offset) % 2 else c for offset, c in enumerate(self.coefficients)
        )
        return TruncatedLaurentSeries(self.ring, self.low, coeffs, self.order)

    def theta(self) -> TruncatedLaurentSeries:
        """Euler operator t d/dt."""
        coeffs = tuple(
            self.ring.coerce(self.low + offset) * c for offset, c in enumerate(self.coefficients)
        )
        return TruncatedLaurentSeries(self.ring, self.low, coeffs, self.order)

    def map_coefficients(
        self, fn: Callable[[Any], Any], ring: CoefficientRing | None = None
    ) -> TruncatedLaurentSeries:
        """Apply a coefficient map, e.g. a base change Z/p^(m+1) -> Z/p^m."""
        target = ring or self.ring
        return TruncatedLaurentSeries(
            target, self.low, tuple(target.coerce(fn(c)) for c in self.coefficients), self.order
        )

    def agrees_with(self, other: TruncatedLaurentSeries) -> bool:
        """Equality at the common precision of both operands."""
        self._check_ring(other)
        order = min(self.order, other.order)
        return self.truncate(order) == other.truncate(order)

    def to_text(self, var: str = "t") -> str:
        terms = []
        for k, c in self.items():
            coeff = str(c)
            if k == 0:
                terms.append(coeff)
            elif k == 1:
                terms.append(f"{coeff}*{var}")
            else:
                terms.append(f"{coeff}*{var}^{k}")
        terms.append(f"O({var}^{self.order})")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return self.to_text()


def series_arith(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries, op: Literal["add", "mul"]
) -> TruncatedLaurentSeries:
    """Add or multiply two series over the same base ring."""
    if a.ring != b.ring:
        raise TypeMismatchError(a.ring, b.ring)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown series operation: {op}")


def series_invert(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    return a.invert()


def series_conjugate(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    return a.conjugate()


def series_theta(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    return a.theta()
