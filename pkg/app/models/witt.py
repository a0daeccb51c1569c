"""p-typical Witt vectors of finite length over Q, F_p and polynomial rings."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from app.core.exceptions import TypeMismatchError, UnsupportedError
from app.models.poly import PolynomialRing
from app.models.rings import CoefficientRing, RationalField


@dataclass(frozen=True, eq=False)
class WittVector:
    """(a_0, ..., a_{m-1}) in W_m(A)."""

    p: int
    base: CoefficientRing
    components: tuple[Any, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("Witt vectors need at least one component")
        object.__setattr__(
            self, "components", tuple(self.base.coerce(a) for a in self.components)
        )

    @classmethod
    def of(cls, p: int, base: CoefficientRing, components: Sequence[Any]) -> WittVector:
        return cls(p, base, tuple(components))

    @classmethod
    def zero(cls, p: int, base: CoefficientRing, length: int) -> WittVector:
        return cls(p, base, tuple(base.zero() for _ in range(length)))

    @classmethod
    def one(cls, p: int, base: CoefficientRing, length: int) -> WittVector:
        return teichmuller(base.one(), p, base, length)

    @property
    def length(self) -> int:
        return len(self.components)

    def check_compatible(self, other: WittVector) -> None:
        if self.p != other.p:
            raise TypeMismatchError(self.p, other.p, "prime")
        if self.length != other.length:
            raise TypeMismatchError(self.length, other.length, "length")
        if self.base != other.base:
            raise TypeMismatchError(self.base, other.base)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return (self.p, self.base, self.components) == (other.p, other.base, other.components)

    def __hash__(self) -> int:
        return hash((self.p, self.base, self.components))

    def __repr__(self) -> str:
        return f"W_{self.length}({', '.join(str(a) for a in self.components)})"


def is_torsion_free(base: CoefficientRing) -> bool:
    """Q and polynomial rings over Q have no p-torsion."""
    if isinstance(base, RationalField):
        return True
    return isinstance(base, PolynomialRing) and isinstance(base.coefficients, RationalField)


def ghost_map(x: WittVector) -> tuple[Any, ...]:
    """Ghost components w_n = sum_{i<=n} p^i x_i^(p^(n-i))."""
    if not is_torsion_free(x.base):
        raise UnsupportedError("ghost map", x.base)
    p = x.p
    return tuple(
        sum((p**i * x.components[i] ** (p ** (n - i)) for i in range(n + 1)), x.base.zero())
        for n in range(x.length)
    )


def ghost_inverse(p: int, ghost: Sequence[Any], base: CoefficientRing) -> WittVector:
    """The Witt vector with the given ghost components over a torsion-free base."""
    if not is_torsion_free(base):
        raise UnsupportedError("inverse ghost map", base)
    components: list[Any] = []
    for n, w in enumerate(ghost):
        partial = sum(
            (p**i * components[i] ** (p ** (n - i)) for i in range(n)), base.zero()
        )
        components.append((base.coerce(w) - partial) * Fraction(1, p**n))
    return WittVector(p, base, tuple(components))


def teichmuller(a: Any, p: int, base: CoefficientRing, length: int) -> WittVector:
    """[a] = (a, 0, ..., 0)."""
    return WittVector(p, base, (base.coerce(a),) + tuple(base.zero() for _ in range(length - 1)))


def verschiebung(x: WittVector) -> WittVector:
    """V(a_0, ..., a_{m-1}) = (0, a_0, ..., a_{m-2})."""
    return WittVector(x.p, x.base, (x.base.zero(),) + x.components[:-1])


def restrict(x: WittVector) -> WittVector:
    """W_m -> W_{m-1}, dropping the last component."""
    if x.length < 2:
        raise ValueError("Cannot restrict a Witt vector of length 1")
    return WittVector(x.p, x.base, x.components[:-1])
