"""Tests for validation logic."""

from fractions import Fraction

import pytest

from app.utils.validators import (
    ValidationResult,
    parse_weights,
    validate_orders,
    validate_prime,
    validate_weights,
    validate_witt_length,
)


class TestValidationResult:
    """Tests for ValidationResult dataclass."""

    def test_valid_result_creation(self):
        """Test creating a valid result."""
        result = ValidationResult(is_valid=True)
        assert result.is_valid is True
        assert result.error is None
        assert result.warnings == []

    def test_invalid_result_with_error(self):
        """Test creating an invalid result with error."""
        result = ValidationResult(is_valid=False, error="Test error")
        assert result.is_valid is False
        assert result.error == "Test error"

    def test_result_with_warnings(self):
        """Test creating result with warnings."""
        result = ValidationResult(is_valid=True, warnings=["Warning 1", "Warning 2"])
        assert len(result.warnings) == 2
        assert "Warning 1" in result.warnings


class TestValidatePrime:
    """Tests for validate_prime function."""

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
    def test_primes_pass(self, p):
        """Test that primes are accepted."""
        assert validate_prime(p).is_valid

    @pytest.mark.parametrize("p", [-3, 0, 1, 4, 9])
    def test_non_primes_fail(self, p):
        """Test that everything else is rejected."""
        result = validate_prime(p)
        assert result.is_valid is False
        assert "not a prime" in result.error


class TestWeights:
    """Tests for parse_weights and validate_weights."""

    def test_parse(self):
        """Test exact rationals with surrounding spaces."""
        assert parse_weights("1/3, 1/3") == [Fraction(1, 3), Fraction(1, 3)]
        assert parse_weights("1/2") == [Fraction(1, 2)]

    @pytest.mark.parametrize("text", ["0.5", "1/3,", "", "a"])
    def test_parse_rejects(self, text):
        """Test decimals, empty entries and junk."""
        with pytest.raises(ValueError):
            parse_weights(text)

    def test_count_mismatch(self):
        """Test that one weight per variable is required."""
        result = validate_weights("1/3", 2)
        assert result.is_valid is False
        assert result.error == "Expected 2 weights, got 1"

    def test_zero_denominator(self):
        """Test that 1/0 is reported rather than raised."""
        assert validate_weights("1/0", 1).is_valid is False

    def test_valid(self):
        """Test a matching weight list."""
        assert validate_weights("1/3,1/3", 2).is_valid


class TestValidateOrders:
    """Tests for validate_orders function."""

    def test_positive_orders(self):
        """Test that orders must be positive."""
        assert validate_orders(8).is_valid
        assert validate_orders(0).is_valid is False
        assert validate_orders(8, 0).is_valid is False

    def test_warns_when_t_order_too_small(self):
        """Test the warning when N cannot absorb M."""
        result = validate_orders(3, 6)
        assert result.is_valid
        assert len(result.warnings) == 1
        assert "s-order 6" in result.warnings[0]

    def test_no_warning(self):
        """Test that N = 8, M = 6 is fine."""
        assert validate_orders(8, 6).warnings == []


class TestValidateWittLength:
    """Tests for validate_witt_length function."""

    def test_valid(self):
        """Test a small length."""
        result = validate_witt_length(5, 2)
        assert result.is_valid
        assert result.warnings == []

    def test_invalid(self):
        """Test bad primes and lengths."""
        assert validate_witt_length(4, 1).is_valid is False
        assert validate_witt_length(2, 0).is_valid is False

    @pytest.mark.parametrize(("p", "m"), [(2, 5), (101, 3)])
    def test_deep_tables_warn(self, p, m):
        """Test the warning for expensive universal polynomials."""
        result = validate_witt_length(p, m)
        assert result.is_valid
        assert result.warnings
