"""Utility functions and classes."""

from app.utils.expr_parser import parse_poly, print_expr
from app.utils.validators import ValidationResult

__all__ = ["ValidationResult", "parse_poly", "print_expr"]
