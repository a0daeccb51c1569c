"""Tests for sparse multivariate polynomials and monomial orders."""

from fractions import Fraction

import pytest

from app.core.exceptions import NotInvertibleError, TypeMismatchError
from app.models.poly import MonomialOrder, MultiPoly, PolynomialRing, divides
from app.models.rings import QQ, modular_ring


class TestMonomialOrder:
    """Tests for the graded monomial orders."""

    def test_weighted_order_needs_weights(self):
        """Test that wdeg without weights is rejected."""
        with pytest.raises(ValueError):
            MonomialOrder("wdeg")

    def test_grlex_and_grevlex_differ(self):
        """Test the classic x*z^2 versus y^3 tie-break."""
        xz2, y3 = (1, 0, 2), (0, 3, 0)
        assert MonomialOrder("grlex").key(xz2) > MonomialOrder("grlex").key(y3)
        assert MonomialOrder("grevlex").key(y3) > MonomialOrder("grevlex").key(xz2)

    def test_weighted_degree_dominates(self):
        """Test that weighted degree is compared before total degree."""
        order = MonomialOrder("wdeg", (Fraction(1, 2), Fraction(1, 4)))
        assert order.key((1, 0)) > order.key((0, 1))
        assert order.key((0, 3)) > order.key((1, 0))

    def test_leading_term_of_d4(self, make_poly):
        """Test that x^3 leads x^3 + x*y^2 under the weighted order."""
        f = make_poly("x^3 + x*y^2")
        order = MonomialOrder("wdeg", (Fraction(1, 3), Fraction(1, 3)))
        assert f.leading_term(order) == ((3, 0), 1)

    def test_divides(self):
        """Test monomial divisibility."""
        assert divides((1, 0), (2, 1))
        assert not divides((0, 2), (2, 1))


class TestMultiPoly:
    """Tests for polynomial arithmetic."""

    def test_zero_terms_are_dropped(self):
        """Test that cancelling terms leave no zero coefficients."""
        p = MultiPoly(QQ, ("x",), [((1,), 2), ((1,), -2)])
        assert p.is_zero
        assert not p.terms

    def test_exponent_length_is_checked(self):
        """Test that exponents must match the variable count."""
        with pytest.raises(ValueError):
            MultiPoly(QQ, ("x", "y"), {(1,): 1})

    def test_square_of_sum(self, make_poly):
        """Test (x + y)^2 = x^2 + 2xy + y^2."""
        assert make_poly("(x + y)^2") == make_poly("x^2 + 2*x*y + y^2")

    def test_subtraction_and_constants(self, make_poly):
        """Test mixed arithmetic with scalars."""
        f = make_poly("x + 1")
        assert f - 1 == make_poly("x")
        assert 1 - f == make_poly("-x", ["x"])
        assert f * 2 == make_poly("2*x + 2")
        assert MultiPoly.constant(QQ, ("x",), 2) == 2

    def test_negative_power(self, make_poly):
        """Test that negative powers are rejected."""
        with pytest.raises(ValueError):
            make_poly("x") ** -1

    def test_mismatched_variables(self, make_poly):
        """Test that polynomials in different variables do not mix."""
        with pytest.raises(TypeMismatchError):
            make_poly("x") + make_poly("y")

    def test_mismatched_rings(self, make_poly):
        """Test that polynomials over different rings do not mix."""
        with pytest.raises(TypeMismatchError):
            make_poly("x") + make_poly("x", ring=modular_ring(5))

    def test_derivative(self, make_poly):
        """Test partial derivatives of x^3 + x*y^2."""
        f = make_poly("x^3 + x*y^2")
        assert f.derivative(0) == make_poly("3*x^2 + y^2")
        assert f.derivative(1) == make_poly("2*x*y")

    def test_derivative_in_characteristic_p(self, make_poly):
        """Test that d/dx x^3 vanishes over F_3."""
        assert make_poly("x^3", ring=modular_ring(3)).derivative(0).is_zero

    def test_mul_term(self, make_poly):
        """Test multiplication by a single term."""
        assert make_poly("x + 1").mul_term((1,), 3) == make_poly("3*x^2 + 3*x")

    def test_weighted_degree(self, make_poly):
        """Test weighted degree and quasi-homogeneity."""
        weights = (Fraction(1, 2), Fraction(1, 4))
        assert make_poly("x^2 + y^4").weighted_degree(weights) == 1
        assert make_poly("x^2 + y^4").is_homogeneous(weights)
        assert not make_poly("x^2 + y^2").is_homogeneous(weights)
        assert MultiPoly.zero(QQ, ("x",)).weighted_degree([Fraction(1)]) == -1

    def test_leading_term_of_zero(self):
        """Test that the zero polynomial has no leading term."""
        with pytest.raises(ValueError):
            MultiPoly.zero(QQ, ("x",)).leading_term(MonomialOrder("grevlex"))

    def test_change_ring(self, make_poly):
        """Test base change Q -> Z/25."""
        f = make_poly("1/3*x + 1")
        image = f.change_ring(modular_ring(5, 2))
        assert image.coefficient((1,)) == 17
        assert image.coefficient((0,)) == 1

    def test_to_text(self, make_poly):
        """Test rendering in grevlex order."""
        assert make_poly("y^2 + 2*x*y + x^2").to_text() == "x^2 + 2*x*y + y^2"
        assert MultiPoly.zero(QQ, ("x",)).to_text() == "0"

    def test_hash_matches_equality(self, make_poly):
        """Test that equal polynomials hash alike."""
        assert hash(make_poly("x*y + 1")) == hash(make_poly("1 + y*x"))


class TestPolynomialRing:
    """Tests for polynomial rings used as Witt vector bases."""

    def test_units_are_unit_constants(self):
        """Test which polynomials are invertible."""
        ring = PolynomialRing(QQ, ("x",))
        assert ring.is_unit(2)
        assert not ring.is_unit(ring.gen("x"))
        assert ring.inverse(2) == Fraction(1, 2)

    def test_inverse_of_non_unit(self):
        """Test that x has no inverse."""
        ring = PolynomialRing(QQ, ("x",))
        with pytest.raises(NotInvertibleError):
            ring.inverse(ring.gen("x"))

    def test_tag(self):
        """Test the report tag."""
        assert PolynomialRing(modular_ring(3), ("x", "y")).tag() == "GF(3)[x,y]"
