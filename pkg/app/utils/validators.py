"""Validation logic for command-line inputs."""

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

# Universal Witt polynomial tables grow quickly with the depth.
DEEP_WITT_LENGTH = 5


@dataclass
class ValidationResult:
    """Result of validation process."""

    is_valid: bool
    error: str | None = None
    warnings: list[str] = field(default_factory=list)


def validate_prime(p: int) -> ValidationResult:
    """Validate the prime of a Witt or modular computation."""
    if p < 2 or not isprime(p):
        return ValidationResult(is_valid=False, error=f"{p} is not a prime")
    return ValidationResult(is_valid=True)


def parse_weights(text: str) -> list[Fraction]:
    """Parse a comma-separated list of rationals such as "1/3,1/3"."""
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise ValueError(f"Malformed weight list: {text!r}")
    weights = []
    for part in parts:
        if "." in part:
            raise ValueError(f"Weight {part!r} must be an exact rational like 1/3")
        weights.append(Fraction(part))
    return weights


def validate_weights(text: str, nvars: int) -> ValidationResult:
    """Validate a weight list against the number of variables of f."""
    try:
        weights = parse_weights(text)
    except (ValueError, ZeroDivisionError) as exc:
        return ValidationResult(is_valid=False, error=str(exc))

    if len(weights) != nvars:
        return ValidationResult(
            is_valid=False,
            error=f"Expected {nvars} weights, got {len(weights)}",
        )
    return ValidationResult(is_valid=True)


def validate_orders(torder: int, sorder: int | None = None) -> ValidationResult:
    """Validate truncation orders; warn when N cannot absorb the s-order."""
    if torder < 1:
        return ValidationResult(is_valid=False, error="t-order must be positive")
    if sorder is None:
        return ValidationResult(is_valid=True)
    if sorder < 1:
        return ValidationResult(is_valid=False, error="s-order must be positive")

    warnings = []
    if torder <= sorder - 1:
        warnings.append(
            f"t-order {torder} cannot absorb s-order {sorder}: "
            f"the flat extension loses one t-order per s-order"
        )
    return ValidationResult(is_valid=True, warnings=warnings)


def validate_witt_length(p: int, m: int) -> ValidationResult:
    """Validate a Witt vector length, warning about expensive tables."""
    result = validate_prime(p)
    if not result.is_valid:
        return result
    if m < 1:
        return ValidationResult(is_valid=False, error="Witt length must be positive")

    warnings = []
    if m >= DEEP_WITT_LENGTH or p**m > 10**6:
        warnings.append(
            f"Witt length {m} over p = {p} needs large universal polynomials"
        )
    return ValidationResult(is_valid=True, warnings=warnings)
