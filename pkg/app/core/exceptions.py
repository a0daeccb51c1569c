"""Custom exceptions for the library and the command line."""

from typing import Any

DOMAIN_ERROR_EXIT_CODE = 2
USAGE_ERROR_EXIT_CODE = 1


class WittResidueError(Exception):
    """Base exception for domain errors."""

    exit_code: int = DOMAIN_ERROR_EXIT_CODE

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class TypeMismatchError(WittResidueError):
    """Raised when operands live in different rings or have different shapes."""

    def __init__(self, left: Any, right: Any, what: str = "ring"):
        self.left = left
        self.right = right
        super().__init__(f"Mismatched {what}: {left} vs {right}")


class NotInvertibleError(WittResidueError):
    """Raised when an element without an inverse is inverted."""

    def __init__(self, value: Any, detail: str = "not a unit"):
        self.value = value
        super().__init__(f"Cannot invert {value}: {detail}")


class DenominatorNotInvertibleError(NotInvertibleError):
    """Raised when a scalar needed by the pipeline is not a unit of Z/p^m.

    Signals that p is a bad prime for the singularity at hand.
    """

    def __init__(self, scalar: Any, modulus: int | None = None):
        self.scalar = scalar
        self.modulus = modulus
        where = f" modulo {modulus}" if modulus is not None else ""
        super().__init__(scalar, f"denominator is not invertible{where}")


class IntegralityViolationError(WittResidueError):
    """Raised when a universal Witt polynomial would get a non-integral coefficient."""

    def __init__(self, p: int, index: int, kind: str):
        self.p = p
        self.index = index
        self.kind = kind
        super().__init__(
            f"Non-exact division by {p}^{index} while solving {kind}_{index}"
        )


class UnsupportedError(WittResidueError):
    """Raised when an operation is requested over an unsupported base ring."""

    def __init__(self, operation: str, base: Any):
        self.operation = operation
        self.base = base
        super().__init__(f"{operation} is not supported over {base}")


class NotQuasiHomogeneousError(WittResidueError):
    """Raised when the Euler relation fails for the given weights."""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Not quasi-homogeneous: {detail}")


class NotIsolatedError(WittResidueError):
    """Raised when the Jacobian ideal has an infinite staircase."""

    def __init__(self, variables: list[str]):
        self.variables = variables
        names = ", ".join(variables)
        super().__init__(
            f"Singularity is not isolated: no pure power of {names} in the Jacobian ideal"
        )


class InternalInconsistencyError(WittResidueError):
    """Raised when a self-check that must always hold fails."""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Internal inconsistency: {detail}")


class PrecisionLossError(WittResidueError):
    """Raised when truncation leaves no valid coefficients."""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Precision exhausted: {detail}")


class InverseSystemViolationError(WittResidueError):
    """Raised when a level-(m+1) result does not reduce to the level-m result."""

    def __init__(self, p: int, level: int, entry: tuple[int, int]):
        self.p = p
        self.level = level
        self.entry = entry
        super().__init__(
            f"Level {level + 1} pairing does not reduce to level {level} "
            f"modulo {p}^{level} at entry {entry}"
        )


class SkippedBadPrimeError(WittResidueError):
    """Raised when a rational value has a denominator divisible by p."""

    def __init__(self, p: int, value: Any):
        self.p = p
        self.value = value
        super().__init__(f"Skipped: {value} has a denominator divisible by {p}")


class UsageError(WittResidueError):
    """Raised on invalid command-line usage."""

    exit_code = USAGE_ERROR_EXIT_CODE


class ExpressionSyntaxError(UsageError):
    """Raised when a polynomial expression cannot be parsed."""

    def __init__(self, detail: str, line: int, column: int):
        self.detail = detail
        self.line = line
        self.column = column
        super().__init__(f"Syntax error at line {line}, column {column}: {detail}")
