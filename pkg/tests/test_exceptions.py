"""Tests for custom exceptions."""

from fractions import Fraction

from app.core.exceptions import (
    DenominatorNotInvertibleError,
    ExpressionSyntaxError,
    IntegralityViolationError,
    InverseSystemViolationError,
    NotInvertibleError,
    NotIsolatedError,
    SkippedBadPrimeError,
    TypeMismatchError,
    UnsupportedError,
    UsageError,
    WittResidueError,
)


class TestWittResidueError:
    """Tests for the base exception."""

    def test_create_error(self):
        """Test creating WittResidueError."""
        error = WittResidueError("Test error message")
        assert error.message == "Test error message"
        assert str(error) == "Test error message"

    def test_inheritance(self):
        """Test that WittResidueError inherits from Exception."""
        assert isinstance(WittResidueError("Test"), Exception)

    def test_exit_code(self):
        """Test that domain errors exit with 2."""
        assert WittResidueError("Test").exit_code == 2
        assert UnsupportedError("frobenius", "QQ").exit_code == 2


class TestUsageError:
    """Tests for command-line usage errors."""

    def test_exit_code(self):
        """Test that usage errors exit with 1."""
        assert UsageError("bad flag").exit_code == 1

    def test_syntax_error_position(self):
        """Test line and column of a syntax error."""
        error = ExpressionSyntaxError("unexpected end of input", 1, 3)
        assert error.line == 1
        assert error.column == 3
        assert "line 1, column 3" in error.message
        assert isinstance(error, UsageError)
        assert error.exit_code == 1


class TestArithmeticErrors:
    """Tests for errors raised by ring arithmetic."""

    def test_type_mismatch(self):
        """Test the message names both sides."""
        error = TypeMismatchError(2, 3, "prime")
        assert error.left == 2
        assert error.right == 3
        assert "Mismatched prime" in error.message

    def test_denominator_not_invertible(self):
        """Test that a bad-prime denominator is a NotInvertibleError."""
        error = DenominatorNotInvertibleError(Fraction(1, 3), 9)
        assert error.scalar == Fraction(1, 3)
        assert error.modulus == 9
        assert "modulo 9" in error.message
        assert isinstance(error, NotInvertibleError)

    def test_denominator_without_modulus(self):
        """Test the message when no modulus is known."""
        error = DenominatorNotInvertibleError(3)
        assert error.modulus is None
        assert "modulo" not in error.message


class TestPipelineErrors:
    """Tests for errors raised by the algebra pipeline."""

    def test_not_isolated(self):
        """Test that the variables lacking a pure power are listed."""
        error = NotIsolatedError(["x", "y"])
        assert error.variables == ["x", "y"]
        assert "x, y" in error.message

    def test_integrality_violation(self):
        """Test the index and kind of a failed division."""
        error = IntegralityViolationError(2, 1, "S")
        assert (error.p, error.index, error.kind) == (2, 1, "S")
        assert "S_1" in error.message

    def test_inverse_system_violation(self):
        """Test that both levels appear in the message."""
        error = InverseSystemViolationError(5, 2, (0, 1))
        assert error.entry == (0, 1)
        assert "Level 3" in error.message
        assert "level 2" in error.message

    def test_skipped_bad_prime(self):
        """Test the skipped-value message."""
        error = SkippedBadPrimeError(2, Fraction(1, 4))
        assert error.value == Fraction(1, 4)
        assert error.message.startswith("Skipped")
