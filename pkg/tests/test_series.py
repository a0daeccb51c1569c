"""Tests for truncated Laurent series."""

from fractions import Fraction

import pytest

from app.core.exceptions import NotInvertibleError, PrecisionLossError, TypeMismatchError
from app.models.rings import QQ, modular_ring
from app.models.series import TruncatedLaurentSeries, series_arith


def series(coefficients, order=None, low=0, ring=QQ):
    return TruncatedLaurentSeries.from_coefficients(ring, coefficients, order, low)


class TestConstruction:
    """Tests for building series."""

    def test_leading_zeros_are_stripped(self):
        """Test that the stored lower exponent is the valuation."""
        s = series([0, 0, 5, 1], order=4)
        assert s.low == 2
        assert s.coefficients == (5, 1)

    def test_zero_series(self):
        """Test that a series without known nonzero coefficients has low == order."""
        z = TruncatedLaurentSeries.zero(QQ, 4)
        assert z.is_zero
        assert z.low == 4
        assert series([0, 0], order=2).is_zero

    def test_monomial_beyond_precision_is_zero(self):
        """Test that t^k with k >= N collapses to O(t^N)."""
        assert TruncatedLaurentSeries.monomial(QQ, 1, 5, 3).is_zero

    def test_inconsistent_length(self):
        """Test that coefficient count must match order - low."""
        with pytest.raises(ValueError):
            TruncatedLaurentSeries(QQ, 0, (Fraction(1),), 3)

    def test_coefficient_beyond_order(self):
        """Test that reading past the truncation order is an error."""
        s = series([1, 2], order=2)
        assert s.coefficient(-3) == 0
        assert s.coefficient(1) == 2
        with pytest.raises(PrecisionLossError):
            s.coefficient(2)


class TestArithmetic:
    """Tests for series arithmetic."""

    def test_add_takes_smaller_order(self):
        """Test that a sum is known only to the smaller precision."""
        total = series([1, 1, 1], order=3) + series([1, 2, 3, 4, 5], order=5)
        assert total.order == 3
        assert total.coefficients == (2, 3, 4)

    def test_add_scalar(self):
        """Test adding a constant."""
        assert (series([1, 1], order=2) + 1).coefficients == (2, 1)

    def test_product(self):
        """Test (1 + t)(1 - t) = 1 - t^2."""
        product = series([1, 1, 0, 0]) * series([1, -1, 0, 0])
        assert product == series([1, 0, -1, 0])

    def test_product_precision_with_valuation(self):
        """Test that the valuation of one factor extends the precision of the other."""
        product = series([0, 1], order=2) * series([1, 0, 0], order=3)
        assert product.low == 1
        assert product.order == 2
        product = series([1, 0, 0], order=4, low=1) * series([1, 0, 0], order=3)
        assert product.order == 4

    def test_series_arith_dispatch(self):
        """Test series_arith on both operations and an unknown one."""
        a = series([1, 1, 0])
        b = series([0, 1, 0])
        assert series_arith(a, b, "add") == series([1, 2, 0])
        assert series_arith(a, b, "mul") == series([0, 1, 1])
        with pytest.raises(ValueError):
            series_arith(a, b, "div")  # type: ignore[arg-type]

    def test_mismatched_rings(self):
        """Test that series over different rings do not mix."""
        a = series([1, 1])
        b = series([1, 1], ring=modular_ring(5))
        with pytest.raises(TypeMismatchError):
            series_arith(a, b, "add")


class TestInvert:
    """Tests for series inversion."""

    def test_geometric_series(self):
        """Test 1/(1 + t) = 1 - t + t^2 - t^3 + O(t^4)."""
        inverse = series([1, 1, 0, 0]).invert()
        assert inverse == series([1, -1, 1, -1])

    def test_inverse_of_t(self):
        """Test that 1/(t + O(t^3)) = t^-1 + O(t)."""
        inverse = series([0, 1, 0]).invert()
        assert inverse.low == -1
        assert inverse.order == 1
        assert inverse.coefficients == (1, 0)

    def test_inverse_times_self(self):
        """Test that a * a^-1 = 1 at the available precision."""
        a = series([2, 3, 5, 7])
        product = a * a.invert()
        assert product.agrees_with(TruncatedLaurentSeries.constant(QQ, 1, product.order))

    def test_zero_is_not_invertible(self):
        """Test that O(t^N) has no inverse."""
        with pytest.raises(NotInvertibleError):
            TruncatedLaurentSeries.zero(QQ, 3).invert()

    def test_non_unit_leading_coefficient(self):
        """Test that 5 + t over Z/25 is not invertible."""
        with pytest.raises(NotInvertibleError):
            series([5, 1], ring=modular_ring(5, 2)).invert()

    def test_inverse_over_modular_ring(self):
        """Test that 1/3 over Z/25 is 17."""
        inverse = series([3, 0], ring=modular_ring(5, 2)).invert()
        assert inverse.coefficients == (17, 0)


class TestOperators:
    """Tests for conjugation, theta, shift, truncation and coefficient maps."""

    def test_conjugate(self):
        """Test g(t) -> g(-t)."""
        assert series([1, 2, 3]).conjugate() == series([1, -2, 3])
        assert series([1, 1], low=-1).conjugate() == series([-1, 1], low=-1)

    def test_conjugate_is_involution(self):
        """Test that conjugating twice is the identity."""
        s = series([1, 2, 3, 4], low=-2)
        assert s.conjugate().conjugate() == s

    def test_theta(self):
        """Test t d/dt on 1 + 2t + 3t^2."""
        assert series([1, 2, 3]).theta() == series([0, 2, 6])

    def test_theta_on_negative_powers(self):
        """Test that theta multiplies t^-1 by -1."""
        assert series([1, 0], low=-1).theta() == series([-1, 0], low=-1)

    def test_shift(self):
        """Test multiplication by t^k."""
        shifted = series([1, 1]).shift(2)
        assert shifted.low == 2
        assert shifted.order == 4

    def test_truncate(self):
        """Test lowering and refusing to raise the precision."""
        s = series([1, 2, 3])
        assert s.truncate(2) == series([1, 2])
        assert s.truncate(0).is_zero
        with pytest.raises(PrecisionLossError):
            s.truncate(4)

    def test_agrees_with(self):
        """Test equality at the common precision."""
        assert series([1, 2, 3]).agrees_with(series([1, 2, 3, 4, 5]))
        assert not series([1, 2, 3]).agrees_with(series([1, 2, 4, 4]))

    def test_map_coefficients(self):
        """Test base change Q -> Z/5."""
        image = series([Fraction(1, 3), 1]).map_coefficients(lambda c: c, modular_ring(5))
        assert image.ring == modular_ring(5)
        assert image.coefficients == (2, 1)

    def test_to_text(self):
        """Test the text rendering with t-powers."""
        s = series([1, 0, Fraction(1, 2)], order=3)
        assert s.to_text() == "1 + 1/2*t^2 + O(t^3)"
        assert TruncatedLaurentSeries.zero(QQ, 2).to_text() == "O(t^2)"
