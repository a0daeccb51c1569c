"""Tests for the higher residue pairing and its flat extension over a family."""

from fractions import Fraction

import pytest

from app.core.exceptions import PrecisionLossError, TypeMismatchError, UnsupportedError
from app.models.rings import QQ, modular_ring
from app.models.series import TruncatedLaurentSeries
from app.services.brieskorn import BrieskornElement
from app.services.pairing import flat_extend_pairing, pairing_basis, pairing_eval
from app.services.residues import family_residue_pairing, milnor_algebra
from app.services.singularity import FamilyDeformation

N = 8


@pytest.fixture
def a2_pairing(a2_algebra):
    return pairing_basis(a2_algebra, N)


class TestPairingBasis:
    """Tests for K on the monomial basis."""

    def test_a2_matrix(self, a2_pairing):
        """Test that K mod t is [[0, 1/3], [1/3, 0]] for x^3."""
        assert a2_pairing.constant_term() == ((0, Fraction(1, 3)), (Fraction(1, 3), 0))
        assert a2_pairing.labels == ("1", "x")
        assert a2_pairing.torder == N
        assert a2_pairing.size == 2

    def test_entries_are_constant_series(self, a2_pairing):
        """Test that no higher powers of t appear on a QH basis."""
        for row in a2_pairing.entries:
            for entry in row:
                assert all(k == 0 for k, _ in entry.items())

    def test_fermat_cubic_labels(self, fermat_cubic):
        """Test basis labels in Milnor basis order."""
        pairing = pairing_basis(milnor_algebra(fermat_cubic), N)
        assert pairing.labels == ("1", "x", "y", "x*y")
        assert pairing.entry(0, 3).coefficient(0) == Fraction(1, 9)

    @pytest.mark.parametrize("fixture", ["a2", "d4", "fermat_cubic"])
    def test_conjugate_symmetric(self, request, fixture):
        """Test K_ij(t) = K_ji(-t)."""
        algebra = milnor_algebra(request.getfixturevalue(fixture))
        assert pairing_basis(algebra, N).is_conjugate_symmetric()

    def test_map_to_modular_ring(self, a2_pairing):
        """Test entrywise base change Q -> Z/25."""
        image = a2_pairing.map_coefficients(lambda c: c, modular_ring(5, 2))
        assert image.ring == modular_ring(5, 2)
        assert image.constant_term()[0][1] == 17

    def test_mismatch(self, a2_pairing, a2_algebra):
        """Test locating the first differing entry."""
        assert a2_pairing.mismatch(pairing_basis(a2_algebra, N)) is None
        shifted = a2_pairing.map_coefficients(lambda c: c + 1)
        assert a2_pairing.mismatch(shifted) == (0, 1)
        assert not a2_pairing.agrees_with(shifted)


class TestPairingEval:
    """Tests for K(u, v) on lattice sections."""

    def test_basis_values(self, a2_algebra, a2_pairing):
        """Test K(e_0, e_1) = 1/3."""
        e0 = BrieskornElement.basis_element(a2_algebra, 0, N)
        e1 = BrieskornElement.basis_element(a2_algebra, 1, N)
        assert pairing_eval(e0, e1, a2_pairing).coefficient(0) == Fraction(1, 3)
        assert pairing_eval(e0, e0, a2_pairing).is_zero

    def test_twisted_second_slot(self, a2_algebra, a2_pairing):
        """Test K(u, t*v) = -t*K(u, v)."""
        e0 = BrieskornElement.basis_element(a2_algebra, 0, N)
        e1 = BrieskornElement.basis_element(a2_algebra, 1, N)
        t = TruncatedLaurentSeries.monomial(QQ, 1, 1, N)
        value = pairing_eval(e0, e1.scale(t), a2_pairing)
        assert value.low == 1
        assert value.coefficient(1) == Fraction(-1, 3)
        assert pairing_eval(e0.scale(t), e1, a2_pairing).coefficient(1) == Fraction(1, 3)

    def test_mixing_lattices(self, a2_algebra, a2_pairing, fermat_cubic):
        """Test that sections of different germs cannot be paired."""
        e0 = BrieskornElement.basis_element(a2_algebra, 0, N)
        other = BrieskornElement.basis_element(milnor_algebra(fermat_cubic), 0, N)
        with pytest.raises(TypeMismatchError):
            pairing_eval(e0, other, a2_pairing)

    def test_pairing_of_wrong_size(self, a2_algebra, fermat_cubic):
        """Test that the pairing must match the lattice."""
        e0 = BrieskornElement.basis_element(a2_algebra, 0, N)
        wrong = pairing_basis(milnor_algebra(fermat_cubic), N)
        with pytest.raises(TypeMismatchError):
            pairing_eval(e0, e0, wrong)

    def test_precision_exhausted(self, a2_algebra, a2_pairing):
        """Test that a result with no trustworthy coefficient is an error."""
        u = BrieskornElement(
            a2_algebra,
            (TruncatedLaurentSeries.zero(QQ, -3), TruncatedLaurentSeries.constant(QQ, 1, 2)),
        )
        v = BrieskornElement.basis_element(a2_algebra, 0, 2)
        with pytest.raises(PrecisionLossError):
            pairing_eval(u, v, a2_pairing)


class TestFlatExtension:
    """Tests for the pairing over A[s]/(s^M)."""

    def test_x3_plus_sx_is_constant(self, a2, a2_pairing, make_poly):
        """Test that K stays [[0, 1/3], [1/3, 0]] along x^3 + s*x."""
        family = FamilyDeformation(a2, make_poly("x"), 6)
        extended = flat_extend_pairing(family, a2_pairing)
        assert extended.sorder == 6
        assert extended.ring == family.ring
        assert extended.constant_term() == ((0, Fraction(1, 3)), (Fraction(1, 3), 0))

    def test_fiber_matches_family_residues(self, a2, a2_pairing, make_poly):
        """Test that K mod t equals the residue pairing of f_s."""
        family = FamilyDeformation(a2, make_poly("x"), 4)
        extended = flat_extend_pairing(family, a2_pairing)
        fiber = family_residue_pairing(milnor_algebra(a2), family)
        assert extended.constant_term() == fiber

    def test_upper_deformation(self, a2, a2_pairing, make_poly):
        """Test res(1) = -4s/9 along x^3 + s*x^4, from d f_s = x^2 (3 + 4sx)."""
        family = FamilyDeformation(a2, make_poly("x^4"), 3)
        fiber = family_residue_pairing(milnor_algebra(a2), family)
        assert fiber[0][0] == family.ring.gen() * Fraction(-4, 9)
        assert fiber[0][1] == Fraction(1, 3)
        assert fiber[1][0] == Fraction(1, 3)
        assert fiber[1][1] == 0
        assert flat_extend_pairing(family, a2_pairing).constant_term() == fiber

    def test_two_variable_fiber(self, d4, d4_algebra, make_poly):
        """Test that K mod t matches the residues of f_s for D_4 + s*x*y."""
        family = FamilyDeformation(d4, make_poly("x*y", d4.variables), 3)
        extended = flat_extend_pairing(family, pairing_basis(d4_algebra, N))
        fiber = family_residue_pairing(d4_algebra, family)
        assert extended.constant_term() == fiber

    def test_sorder_past_p_over_fp(self, make_germ, make_poly):
        """Test that 1/(k + 1) is refused once p divides k + 1."""
        f5 = modular_ring(5)
        germ = make_germ("x^3", ["1/3"], ring=f5)
        family = FamilyDeformation(germ, make_poly("x", ring=f5), 6)
        with pytest.raises(UnsupportedError):
            flat_extend_pairing(family, pairing_basis(milnor_algebra(germ), N))

    def test_sorder_one_is_identity(self, a2, a2_pairing, make_poly):
        """Test that M = 1 returns the base pairing."""
        family = FamilyDeformation(a2, make_poly("x"), 1)
        assert flat_extend_pairing(family, a2_pairing) is a2_pairing

    def test_too_many_s_orders(self, a2, a2_algebra, make_poly):
        """Test that each s-order costs one t-order."""
        family = FamilyDeformation(a2, make_poly("x"), 6)
        with pytest.raises(PrecisionLossError):
            flat_extend_pairing(family, pairing_basis(a2_algebra, 3))
