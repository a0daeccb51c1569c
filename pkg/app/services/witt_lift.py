"""The residue and pairing pipeline over W_m(F_p) = Z/p^m and its inverse system."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, TypeVar

from app.core.config import settings
from app.core.exceptions import (
    DenominatorNotInvertibleError,
    InverseSystemViolationError,
    NotIsolatedError,
    SkippedBadPrimeError,
    TypeMismatchError,
    UnsupportedError,
)
from app.models.poly import MultiPoly
from app.models.rings import ModRingElement, ModularRing, RationalField, modular_ring
from app.models.witt import teichmuller
from app.services.pairing import PairingMatrix, pairing_basis
from app.services.residues import milnor_algebra
from app.services.singularity import QHSingularity, qh_check
from app.services.witt_polynomials import witt_to_zpm

logger = logging.getLogger(__name__)

DenominatorPolicy = Literal["error", "track"]
T = TypeVar("T")


@dataclass
class WittContext:
    """Prime, precision level and what to do when a denominator is not a unit.

    With the "track" policy obstructions are collected instead of raised and
    the guarded computation returns None.
    """

    p: int
    m: int
    denominator_policy: DenominatorPolicy = "error"
    obstructions: list[DenominatorNotInvertibleError] = field(default_factory=list)

    def __post_init__(self) -> None:
        modular_ring(self.p, self.m)

    @property
    def ring(self) -> ModularRing:
        return modular_ring(self.p, self.m)

    def at_level(self, level: int) -> "WittContext":
        return WittContext(self.p, level, self.denominator_policy)

    def run(self, fn: Callable[..., T], *args: Any) -> T | None:
        try:
            return fn(*args)
        except DenominatorNotInvertibleError as exc:
            if self.denominator_policy == "error":
                raise
            logger.warning(f"Level {self.m} over p = {self.p}: {exc.message}")
            self.obstructions.append(exc)
            return None


def teichmuller_lift_poly(f: MultiPoly, ctx: WittContext) -> MultiPoly:
    """Lift an F_p polynomial coefficientwise by a -> witt_to_zpm([a])."""
    source = f.ring
    if not isinstance(source, ModularRing) or source.m != 1:
        raise UnsupportedError("Teichmüller lift", source)
    if source.p != ctx.p:
        raise TypeMismatchError(source.p, ctx.p, "prime")
    return f.map_coefficients(
        lambda a: witt_to_zpm(teichmuller(a, ctx.p, source, ctx.m)), ctx.ring
    )


def lift_to_level(f: MultiPoly, p: int, level: int) -> MultiPoly:
    """Base change of f from Q or F_p to Z/p^level."""
    ctx = WittContext(p, level)
    if isinstance(f.ring, RationalField):
        return f.change_ring(ctx.ring)
    return teichmuller_lift_poly(f, ctx)


def _check_derivatives(source: MultiPoly, lifted: MultiPoly, modulus: int) -> None:
    """A partial derivative killed by the base change means p divides its coefficients."""
    for i in range(source.nvars):
        expected = source.derivative(i)
        if lifted.derivative(i).is_zero and not expected.is_zero:
            _, scalar = max(expected.terms.items())
            raise DenominatorNotInvertibleError(scalar, modulus)


def _jacobian_scalar(source: MultiPoly, p: int) -> Any:
    """First Jacobian coefficient divisible by p, or p itself when none is."""
    for i in range(source.nvars):
        for _, c in sorted(source.derivative(i).terms.items()):
            if isinstance(c, Fraction) and c.numerator % p == 0:
                return c
    return p


def _check_fiber(
    singularity: QHSingularity, lift: Callable[[int], MultiPoly], p: int, modulus: int
) -> None:
    """The reduction mod p must stay isolated with the same Milnor number."""
    if not isinstance(singularity.ring, RationalField):
        return
    try:
        fiber = qh_check(lift(1), singularity.weights, order_name=singularity.order_name)
    except NotIsolatedError as exc:
        logger.info(f"Reduction mod {p} is not isolated: {exc.message}")
        raise DenominatorNotInvertibleError(
            _jacobian_scalar(singularity.f, p), modulus
        ) from exc
    if fiber.milnor_number != singularity.milnor_number:
        logger.info(
            f"Milnor number jumps from {singularity.milnor_number} to "
            f"{fiber.milnor_number} mod {p}"
        )
        raise DenominatorNotInvertibleError(_jacobian_scalar(singularity.f, p), modulus)


def _level_singularity(singularity: QHSingularity, ctx: WittContext) -> QHSingularity:
    p = ctx.p

    def lift(level: int) -> MultiPoly:
        return lift_to_level(singularity.f, p, level)

    lifted = lift(ctx.m)
    _check_derivatives(singularity.f, lifted, ctx.ring.modulus)
    _check_fiber(singularity, lift, p, ctx.ring.modulus)
    return qh_check(
        lifted,
        singularity.weights,
        order_name=singularity.order_name,
        precision_lift=lift,
    )


def _pipeline(singularity: QHSingularity, ctx: WittContext, torder: int) -> PairingMatrix:
    lifted = _level_singularity(singularity, ctx)
    pairing = pairing_basis(milnor_algebra(lifted), torder)
    logger.info(f"Pairing of size {pairing.size} computed over {ctx.ring}")
    return pairing


def witt_pairing(
    singularity: QHSingularity, ctx: WittContext, torder: int | None = None
) -> PairingMatrix | None:
    """K on the Milnor basis with every scalar in Z/p^m.

    Raises DenominatorNotInvertibleError when p is a bad prime for f, unless the
    context tracks obstructions, in which case None is returned.
    """
    torder = settings.torder if torder is None else torder
    return ctx.run(_pipeline, singularity, ctx, torder)


def reduce_pairing(pairing: PairingMatrix, level: int) -> PairingMatrix:
    """Entrywise image under Z/p^(m+k) -> Z/p^level."""
    ring = pairing.ring
    if not isinstance(ring, ModularRing):
        raise UnsupportedError("reduction", ring)
    return pairing.map_coefficients(
        lambda c: c.reduce(level), modular_ring(ring.p, level)
    )


@dataclass
class CompatReport:
    p: int
    level: int
    torder: int
    passed: bool
    matrix: tuple[tuple[Any, ...], ...]


def compat_check(
    singularity: QHSingularity, ctx: WittContext, torder: int | None = None
) -> CompatReport:
    """Reduce the level-m pairing mod p^(m-1) and compare with the direct computation."""
    if ctx.m < 2:
        raise ValueError("Compatibility needs a context of level at least 2")
    torder = settings.torder if torder is None else torder
    strict = WittContext(ctx.p, ctx.m)
    upper = _pipeline(singularity, strict, torder)
    lower = _pipeline(singularity, strict.at_level(ctx.m - 1), torder)
    mismatch = reduce_pairing(upper, ctx.m - 1).mismatch(lower)
    if mismatch is not None:
        raise InverseSystemViolationError(ctx.p, ctx.m - 1, mismatch)
    logger.info(f"Levels {ctx.m} and {ctx.m - 1} are compatible for p = {ctx.p}")
    return CompatReport(ctx.p, ctx.m, torder, True, upper.constant_term())


def compat_chain(
    singularity: QHSingularity, p: int, mmax: int | None = None, torder: int | None = None
) -> list[CompatReport]:
    """compat_check at every level 2..mmax, ordered by level.

    Level 1 is reported with its own matrix since there is nothing below it.
    """
    mmax = settings.mmax if mmax is None else mmax
    torder = settings.torder if torder is None else torder
    base = _pipeline(singularity, WittContext(p, 1), torder)
    reports = [CompatReport(p, 1, torder, True, base.constant_term())]
    reports.extend(
        compat_check(singularity, WittContext(p, level), torder)
        for level in range(2, mmax + 1)
    )
    return reports


@dataclass
class ConsistencyReport:
    p: int
    level: int
    status: Literal["passed", "failed", "skipped"]
    detail: str | None = None


def _to_level(value: Any, ring: ModularRing) -> ModRingElement:
    try:
        return ring.coerce(value)
    except DenominatorNotInvertibleError:
        raise SkippedBadPrimeError(ring.p, value) from None


def rational_consistency(
    singularity: QHSingularity, ctx: WittContext, torder: int | None = None
) -> ConsistencyReport:
    """Compare the rational pairing mapped into Z/p^m with witt_pairing."""
    if not isinstance(singularity.ring, RationalField):
        raise UnsupportedError("rational consistency", singularity.ring)
    torder = settings.torder if torder is None else torder
    rational = pairing_basis(milnor_algebra(singularity), torder)
    try:
        image = rational.map_coefficients(lambda c: _to_level(c, ctx.ring), ctx.ring)
    except SkippedBadPrimeError as exc:
        logger.info(exc.message)
        return ConsistencyReport(ctx.p, ctx.m, "skipped", exc.message)

    direct = _pipeline(singularity, WittContext(ctx.p, ctx.m), torder)
    mismatch = image.mismatch(direct)
    if mismatch is not None:
        i, j = mismatch
        detail = f"entry ({i}, {j}): {image.entry(i, j).to_text()} != {direct.entry(i, j).to_text()}"
        logger.warning(f"Rational pairing does not specialize to level {ctx.m}: {detail}")
        return ConsistencyReport(ctx.p, ctx.m, "failed", detail)
    return ConsistencyReport(ctx.p, ctx.m, "passed")
