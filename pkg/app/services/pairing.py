"""Higher residue pairing on the Brieskorn lattice and its flat extension over a family."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from app.core.exceptions import PrecisionLossError, TypeMismatchError, UnsupportedError
from app.models.poly import MultiPoly
from app.models.rings import CoefficientRing, ModularRing, TruncatedPoly
from app.models.series import TruncatedLaurentSeries
from app.services.brieskorn import BrieskornElement, ds_images
from app.services.residues import MilnorAlgebra, milnor_algebra, residue_pairing_matrix
from app.services.singularity import FamilyDeformation

logger = logging.getLogger(__name__)

SeriesMatrix = tuple[tuple[TruncatedLaurentSeries, ...], ...]


@dataclass(frozen=True, eq=False)
class PairingMatrix:
    """K(e_i, e_j) on the Milnor basis as truncated series."""

    entries: SeriesMatrix
    ring: CoefficientRing
    labels: tuple[str, ...] = ()
    sorder: int | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def torder(self) -> int:
        return min((e.order for row in self.entries for e in row), default=0)

    def entry(self, i: int, j: int) -> TruncatedLaurentSeries:
        return self.entries[i][j]

    def constant_term(self) -> tuple[tuple[Any, ...], ...]:
        """The t^0 fiber, i.e. K mod t."""
        return tuple(tuple(e.coefficient(0) for e in row) for row in self.entries)

    def is_conjugate_symmetric(self) -> bool:
        n = self.size
        return all(
            self.entries[i][j].agrees_with(self.entries[j][i].conjugate())
            for i in range(n)
            for j in range(n)
        )

    def map_coefficients(
        self, fn: Callable[[Any], Any], ring: CoefficientRing | None = None
    ) -> "PairingMatrix":
        target = ring or self.ring
        return PairingMatrix(
            tuple(tuple(e.map_coefficients(fn, target) for e in row) for row in self.entries),
            target,
            self.labels,
            self.sorder,
        )

    def agrees_with(self, other: "PairingMatrix") -> bool:
        if other.size != self.size:
            return False
        return all(
            a.agrees_with(b)
            for row_a, row_b in zip(self.entries, other.entries, strict=True)
            for a, b in zip(row_a, row_b, strict=True)
        )

    def mismatch(self, other: "PairingMatrix") -> tuple[int, int] | None:
        """First entry (i, j) where the two matrices disagree."""
        for i, (row_a, row_b) in enumerate(zip(self.entries, other.entries, strict=True)):
            for j, (a, b) in enumerate(zip(row_a, row_b, strict=True)):
                if not a.agrees_with(b):
                    return i, j
        return None

    def s_part(self, power: int, ring: CoefficientRing) -> "PairingMatrix":
        """Coefficient of s^power of a family matrix, as a matrix over ring."""
        return self.map_coefficients(lambda c: c.coefficient(power), ring)


def basis_labels(algebra: MilnorAlgebra) -> tuple[str, ...]:
    f = algebra.singularity.f
    return tuple(MultiPoly.monomial(f.ring, f.variables, e).to_text() for e in algebra.basis)


def pairing_basis(algebra: MilnorAlgebra, torder: int) -> PairingMatrix:
    """K on the monomial basis of a QH germ: constant series res(phi_i * phi_j)."""
    residues = residue_pairing_matrix(algebra)
    entries = tuple(
        tuple(TruncatedLaurentSeries.constant(algebra.ring, value, torder) for value in row)
        for row in residues
    )
    logger.info(f"Pairing matrix of size {algebra.mu} over {algebra.ring}")
    return PairingMatrix(entries, algebra.ring, basis_labels(algebra))


def pairing_eval(
    u: BrieskornElement, v: BrieskornElement, pairing: PairingMatrix
) -> TruncatedLaurentSeries:
    """K(u, v) = sum a_i(t) b_j(-t) K_ij(t): linear in u, t -> -t twisted in v."""
    if u.algebra is not v.algebra or u.family is not v.family:
        raise TypeMismatchError(u.algebra, v.algebra, "lattice")
    if pairing.size != u.algebra.mu or pairing.ring != u.ring:
        raise TypeMismatchError(pairing.ring, u.ring, "pairing")
    total: TruncatedLaurentSeries | None = None
    lowest = None
    for i, a in enumerate(u.coordinates):
        for j, b in enumerate(v.coordinates):
            k = pairing.entries[i][j]
            term = a * b.conjugate() * k
            total = term if total is None else total + term
            if not (a.is_zero or b.is_zero or k.is_zero):
                low = a.low + b.low + k.low
                lowest = low if lowest is None else min(lowest, low)
    assert total is not None
    if lowest is not None and total.order <= lowest:
        raise PrecisionLossError(
            f"pairing result O(t^{total.order}) has no coefficient at or above t^{lowest}"
        )
    return total


def flat_extend_pairing(
    family: FamilyDeformation, base_pairing: PairingMatrix, sorder: int | None = None
) -> PairingMatrix:
    """Solve d/ds K(e_i, e_j) = K(D e_i, e_j) + K(e_i, D e_j) order by order in s.

    D is the Gauss-Manin connection along s. Every order in s costs one order in t
    because D carries a t^-1.
    """
    M = sorder or family.sorder
    if M <= 1:
        return base_pairing
    algebra = milnor_algebra(family.singularity)
    base = algebra.ring
    N = base_pairing.torder
    n = algebra.mu

    if isinstance(base, ModularRing) and M > base.p:
        raise UnsupportedError(f"flat extension to s-order {M} (needs 1/{base.p})", base)

    images = ds_images(algebra, family, N)
    # connection[a][q][i]: s^a part of the e_q coordinate of D e_i
    connection = [
        [
            [
                images[i].coordinates[q].map_coefficients(lambda c, a=a: c.coefficient(a), base)
                for i in range(n)
            ]
            for q in range(n)
        ]
        for a in range(M)
    ]
    layers: list[list[list[TruncatedLaurentSeries]]] = [
        [list(row) for row in base_pairing.entries]
    ]
    zero = TruncatedLaurentSeries.zero(base, N)
    for k in range(M - 1):
        nxt = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for a in range(k + 1):
                    B, K = connection[a], layers[k - a]
                    for q in range(n):
                        acc = acc + B[q][i] * K[q][j] + K[i][q] * B[q][j].conjugate()
                row.append(acc * base.coerce(Fraction(1, k + 1)))
            nxt.append(row)
        order = min(e.order for row in nxt for e in row)
        if order <= 0:
            raise PrecisionLossError(
                f"t-order {N} cannot absorb {k + 1} inverse powers of t at s-order {M}"
            )
        layers.append(nxt)
        logger.debug(f"Flat extension: s^{k + 1} layer known modulo t^{order}")

    entries = tuple(
        tuple(_assemble([layer[i][j] for layer in layers], family) for j in range(n))
        for i in range(n)
    )
    return PairingMatrix(entries, family.ring, base_pairing.labels, M)


def _assemble(
    layers: Sequence[TruncatedLaurentSeries], family: FamilyDeformation
) -> TruncatedLaurentSeries:
    """Combine the s^k layers into one series with A[s]/(s^M) coefficients."""
    order = min(s.order for s in layers)
    low = min(min(s.low for s in layers), order)
    coefficients = [
        TruncatedPoly(family.ring, [s.coefficient(e) for s in layers]) for e in range(low, order)
    ]
    return TruncatedLaurentSeries(family.ring, low, tuple(coefficients), order)
