"""Tests for quasi-homogeneous germs and their deformations."""

from fractions import Fraction

import pytest

from app.core.exceptions import (
    InternalInconsistencyError,
    NotIsolatedError,
    NotQuasiHomogeneousError,
)
from app.models.rings import QQ, TruncatedPoly
from app.services.singularity import FamilyDeformation, family_division, qh_check


class TestQHCheck:
    """Tests for germ validation."""

    def test_weight_count(self, make_poly):
        """Test that every variable needs a weight."""
        with pytest.raises(NotQuasiHomogeneousError):
            qh_check(make_poly("x^2 + y^2"), [Fraction(1, 2)])

    @pytest.mark.parametrize("weight", [Fraction(0), Fraction(2, 3), Fraction(-1, 2)])
    def test_weight_range(self, make_poly, weight):
        """Test that weights must lie in (0, 1/2]."""
        with pytest.raises(NotQuasiHomogeneousError):
            qh_check(make_poly("x^3"), [weight])

    def test_euler_relation(self, make_poly):
        """Test that x^3 + y^2 is not homogeneous for weights (1/3, 1/3)."""
        with pytest.raises(NotQuasiHomogeneousError) as exc_info:
            qh_check(make_poly("x^3 + y^2"), [Fraction(1, 3), Fraction(1, 3)])
        assert "y^2" in exc_info.value.message

    def test_not_isolated(self, make_poly):
        """Test that x^2*y is rejected as non-isolated."""
        with pytest.raises(NotIsolatedError):
            qh_check(make_poly("x^2*y"), [Fraction(1, 3), Fraction(1, 3)])

    def test_accepts_mixed_weights(self, make_germ):
        """Test x^2 + y^3 + z^4 with weights (1/2, 1/3, 1/4)."""
        germ = make_germ("x^2 + y^3 + z^4", ["1/2", "1/3", "1/4"])
        assert germ.milnor_number == 6
        assert germ.total_weight == Fraction(13, 12)

    @pytest.mark.parametrize("name", ["wdeg", "grlex", "grevlex"])
    def test_other_monomial_orders(self, make_poly, name):
        """Test that the Milnor number does not depend on the monomial order."""
        germ = qh_check(
            make_poly("x^3 + x*y^2"), [Fraction(1, 3), Fraction(1, 3)], order_name=name
        )
        assert germ.milnor_number == 4


class TestMilnorBasis:
    """Tests for the monomial basis of the Milnor algebra."""

    def test_a2(self, a2):
        """Test that x^3 has basis 1, x."""
        assert a2.milnor_basis == ((0,), (1,))

    def test_fermat_cubic(self, fermat_cubic):
        """Test that x^3 + y^3 has basis 1, x, y, xy in that order."""
        assert fermat_cubic.milnor_basis == ((0, 0), (1, 0), (0, 1), (1, 1))

    def test_d4(self, d4):
        """Test that D_4 has basis 1, x, y, y^2."""
        assert d4.milnor_basis == ((0, 0), (1, 0), (0, 1), (0, 2))

    @pytest.mark.parametrize(
        ("fixture", "mu"),
        [("a1", 1), ("a2", 2), ("a3", 3), ("a4", 4), ("d4", 4), ("fermat_quartic", 9)],
    )
    def test_milnor_numbers(self, request, fixture, mu):
        """Test mu = prod(1/w_i - 1) on the fixtures."""
        assert request.getfixturevalue(fixture).milnor_number == mu

    def test_at_level_needs_lift(self, a2):
        """Test that a rational germ cannot be rebuilt over Z/p^m."""
        with pytest.raises(InternalInconsistencyError):
            a2.at_level(2)


class TestFamily:
    """Tests for one-parameter deformations f + s*g."""

    def test_sorder_must_be_positive(self, a2, make_poly):
        """Test that the s-order is at least 1."""
        with pytest.raises(ValueError):
            FamilyDeformation(a2, make_poly("x"), 0)

    def test_variables_must_match(self, a2, make_poly):
        """Test that g lives in the same variables as f."""
        with pytest.raises(ValueError):
            FamilyDeformation(a2, make_poly("y"), 3)

    def test_family_polynomial(self, a2, make_poly):
        """Test f_s = x^3 + s*x over Q[s]/(s^3)."""
        family = FamilyDeformation(a2, make_poly("x"), 3)
        assert family.ring.base == QQ
        assert family.fs.coefficient((3,)) == 1
        assert family.fs.coefficient((1,)) == TruncatedPoly(family.ring, [0, 1])

    def test_division_modulo_s(self, a2, make_poly):
        """Test x^2 = (1/3)(3x^2 + s) - s/3 modulo s^3."""
        family = FamilyDeformation(a2, make_poly("x"), 3)
        remainder, cofactors = family_division(make_poly("x^2"), family)
        assert remainder.coefficient((0,)) == TruncatedPoly(family.ring, [0, Fraction(-1, 3)])
        assert remainder.coefficient((1,)) == 0
        assert cofactors[0] == Fraction(1, 3)

    def test_division_identity(self, d4, make_poly):
        """Test g == sum(a_i * d_i f_s) + r for a D_4 family."""
        family = FamilyDeformation(d4, make_poly("y", ["x", "y"]), 4)
        g = family.lift(make_poly("x^3 + x*y + y^4"))
        remainder, cofactors = family_division(make_poly("x^3 + x*y + y^4"), family)
        rebuilt = remainder + sum(
            (a * d for a, d in zip(cofactors, family.jacobian, strict=True)), g * 0
        )
        assert rebuilt == g
