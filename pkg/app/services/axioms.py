"""Executable checks of the defining properties of the higher residue pairing."""

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field

from app.core.config import settings
from app.models.rings import TruncatedPoly
from app.models.series import TruncatedLaurentSeries
from app.services.brieskorn import BrieskornElement, nabla_s, nabla_tdt
from app.services.pairing import PairingMatrix, pairing_eval
from app.services.residues import (
    MilnorAlgebra,
    family_residue_pairing,
    milnor_algebra,
    residue_pairing_matrix,
)
from app.services.singularity import FamilyDeformation

logger = logging.getLogger(__name__)

BULLETS = {
    1: "conjugate symmetry",
    2: "sesquilinearity",
    3: "derivation along the family",
    4: "t d/dt + n compatibility",
    5: "residue at t = 0",
}


@dataclass
class BulletResult:
    """Outcome of one property over all samples."""

    bullet: int
    name: str
    passed: bool = True
    checks: int = 0
    skipped: bool = False
    counterexample: str | None = None

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.checks += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = describe()
            logger.warning(f"Bullet {self.bullet} ({self.name}) failed: {self.counterexample}")


@dataclass
class AxiomReport:
    trials: int
    seed: int
    torder: int
    nvars: int
    bullets: list[BulletResult] = field(default_factory=list)
    flatness: BulletResult | None = None

    @property
    def passed(self) -> bool:
        checked = [b for b in self.bullets if not b.skipped]
        if self.flatness is not None:
            checked.append(self.flatness)
        return all(b.passed for b in checked)

    def bullet(self, number: int) -> BulletResult:
        return next(b for b in self.bullets if b.bullet == number)


class _Sampler:
    """Seeded random series and lattice sections with coefficients in [-box, box]."""

    def __init__(self, seed: int, box: int, family: FamilyDeformation | None):
        self.rng = random.Random(seed)
        self.box = box
        self.family = family

    def scalar(self, ring):
        if self.family is not None and ring == self.family.ring:
            return TruncatedPoly(
                ring, [self.rng.randint(-self.box, self.box) for _ in range(ring.order)]
            )
        return ring.coerce(self.rng.randint(-self.box, self.box))

    def series(self, ring, order: int) -> TruncatedLaurentSeries:
        return TruncatedLaurentSeries.from_coefficients(
            ring, [self.scalar(ring) for _ in range(order)], order
        )

    def section(self, algebra: MilnorAlgebra, order: int, family=None) -> BrieskornElement:
        ring = family.ring if family is not None else algebra.ring
        return BrieskornElement(
            algebra, tuple(self.series(ring, order) for _ in algebra.basis), family
        )


def _pairs(algebra: MilnorAlgebra, sampler: _Sampler, order: int, trials: int, family=None):
    """Basis pairs first, then seeded random sections."""
    for i in range(algebra.mu):
        for j in range(algebra.mu):
            yield (
                f"(e_{i}, e_{j})",
                BrieskornElement.basis_element(algebra, i, order, family),
                BrieskornElement.basis_element(algebra, j, order, family),
            )
    for trial in range(trials):
        yield (
            f"trial {trial}",
            sampler.section(algebra, order, family),
            sampler.section(algebra, order, family),
        )


def _mismatch(label: str, lhs: TruncatedLaurentSeries, rhs: TruncatedLaurentSeries):
    return lambda: f"{label}: {lhs.to_text()} != {rhs.to_text()}"


def _check_symmetry(result, algebra, pairing, sampler, order, trials, family=None):
    for label, u, v in _pairs(algebra, sampler, order, trials, family):
        lhs = pairing_eval(u, v, pairing)
        rhs = pairing_eval(v, u, pairing).conjugate()
        result.record(lhs.agrees_with(rhs), _mismatch(label, lhs, rhs))


def _check_sesquilinear(result, algebra, pairing, sampler, order, trials, family=None):
    ring = family.ring if family is not None else algebra.ring
    for label, u, w in _pairs(algebra, sampler, order, trials, family):
        v = sampler.series(ring, order)
        middle = v * pairing_eval(u, w, pairing)
        left = pairing_eval(u.scale(v), w, pairing)
        right = pairing_eval(u, w.scale(v.conjugate()), pairing)
        result.record(left.agrees_with(middle), _mismatch(f"{label}, left slot", left, middle))
        result.record(right.agrees_with(middle), _mismatch(f"{label}, right slot", right, middle))


def _check_tdt(result, algebra, pairing, sampler, order, trials, nvars):
    for label, u, w in _pairs(algebra, sampler, order, trials):
        value = pairing_eval(u, w, pairing)
        lhs = value.theta() + value * nvars
        rhs = pairing_eval(nabla_tdt(u), w, pairing) + pairing_eval(u, nabla_tdt(w), pairing)
        result.record(lhs.agrees_with(rhs), _mismatch(label, lhs, rhs))


def _drop_top_s(series: TruncatedLaurentSeries, sorder: int) -> TruncatedLaurentSeries:
    """Keep s^0..s^(M-2): one d/ds makes the top s-coefficient unknown."""
    return series.map_coefficients(lambda c: c.truncate(sorder - 1))


def _check_family(result, algebra, pairing, family, sampler, order, trials):
    M = family.sorder
    for label, u, w in _pairs(algebra, sampler, order, trials, family):
        value = pairing_eval(u, w, pairing)
        lhs = _drop_top_s(value.map_coefficients(lambda c: c.derivative()), M)
        rhs = _drop_top_s(
            pairing_eval(nabla_s(u), w, pairing) + pairing_eval(u, nabla_s(w), pairing), M
        )
        result.record(lhs.agrees_with(rhs), _mismatch(label, lhs, rhs))


def _check_flatness(result, algebra, family, sampler, order, trials):
    M = family.sorder
    for label, u, w in _pairs(algebra, sampler, order, trials, family):
        for name, v in (("first", u), ("second", w)):
            one_way = nabla_tdt(nabla_s(v))
            other_way = nabla_s(nabla_tdt(v))
            ok = all(
                _drop_top_s(a, M).agrees_with(_drop_top_s(b, M))
                for a, b in zip(one_way.coordinates, other_way.coordinates, strict=True)
            )
            result.record(ok, lambda name=name, label=label: f"{label}, {name} section")


def verify_axioms(
    target: MilnorAlgebra | FamilyDeformation,
    pairing: PairingMatrix,
    trials: int | None = None,
    seed: int | None = None,
    box: int | None = None,
    base_pairing: PairingMatrix | None = None,
) -> AxiomReport:
    """Check conjugate symmetry, sesquilinearity, the family derivation rule,
    the t d/dt + n rule and the t = 0 fiber on basis elements and random sections.

    For a family, pairing is the flat extension; bullets 1, 2, 4 and 5 run on
    base_pairing, which defaults to its s = 0 fiber.
    """
    trials = settings.trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    box = settings.sample_box if box is None else box

    family = target if isinstance(target, FamilyDeformation) else None
    algebra = milnor_algebra(family.singularity) if family is not None else target
    if base_pairing is None:
        base_pairing = pairing.s_part(0, algebra.ring) if family is not None else pairing
    order = base_pairing.torder
    nvars = algebra.singularity.nvars
    sampler = _Sampler(seed, box, family)

    report = AxiomReport(trials=trials, seed=seed, torder=order, nvars=nvars)
    results = {number: BulletResult(number, name) for number, name in BULLETS.items()}
    report.bullets = [results[k] for k in sorted(results)]

    _check_symmetry(results[1], algebra, base_pairing, sampler, order, trials)
    _check_sesquilinear(results[2], algebra, base_pairing, sampler, order, trials)
    _check_tdt(results[4], algebra, base_pairing, sampler, order, trials, nvars)

    expected = residue_pairing_matrix(algebra)
    results[5].record(
        base_pairing.constant_term() == expected,
        lambda: f"K mod t = {base_pairing.constant_term()}, residues = {expected}",
    )

    if family is None:
        results[3].skipped = True
    else:
        family_order = pairing.torder
        _check_family(results[3], algebra, pairing, family, sampler, family_order, trials)
        _check_symmetry(results[1], algebra, pairing, sampler, family_order, trials, family)
        fiber = family_residue_pairing(algebra, family)
        results[5].record(
            pairing.constant_term() == fiber,
            lambda: f"family K mod t = {pairing.constant_term()}, residues = {fiber}",
        )
        report.flatness = BulletResult(0, "flatness of the connection")
        _check_flatness(report.flatness, algebra, family, sampler, order, trials)

    logger.info(
        f"Axiom check with {trials} trials (seed {seed}): "
        f"{'passed' if report.passed else 'failed'}"
    )
    return report
