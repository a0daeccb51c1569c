"""Polynomial expressions: tokenizer, recursive-descent parser and printer.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := nat ['/' nat] | var | '(' expr ')'

Variables are x, y, z or x1..x9. There is no implicit multiplication.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from app.core.exceptions import ExpressionSyntaxError
from app.models.poly import MultiPoly
from app.models.rings import CoefficientRing

VARIABLE = re.compile(r"^(?:[xyz]|x[1-9])$")
SYMBOLS = "+-*/^()"


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: PolyExpr
    right: PolyExpr


@dataclass(frozen=True)
class Neg:
    operand: PolyExpr


@dataclass(frozen=True)
class Pow:
    base: PolyExpr
    exponent: int


PolyExpr = Num | Var | BinOp | Neg | Pow


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", a symbol, or "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, column = 1, 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line, column = line + 1, 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            column += 1
            continue
        start = pos
        if ch.isdigit():
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(Token("num", text[start:pos], line, column))
        elif ch.isalpha():
            while pos < len(text) and text[pos].isalnum():
                pos += 1
            name = text[start:pos]
            if not VARIABLE.match(name):
                raise ExpressionSyntaxError(
                    f"unknown variable '{name}' (use x, y, z or x1..x9)", line, column
                )
            tokens.append(Token("name", name, line, column))
        elif ch in SYMBOLS:
            pos += 1
            tokens.append(Token(ch, ch, line, column))
        else:
            raise ExpressionSyntaxError(f"unexpected character '{ch}'", line, column)
        column += pos - start
    tokens.append(Token("end", "", line, column))
    return tokens


class Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, detail: str) -> ExpressionSyntaxError:
        token = self.current
        found = token.text or "end of input"
        return ExpressionSyntaxError(f"{detail}, found '{found}'", token.line, token.column)

    def _accept(self, kind: str) -> Token | None:
        token = self.current
        if token.kind == kind:
            self.pos += 1
            return token
        return None

    def _expect(self, kind: str, detail: str) -> Token:
        token = self._accept(kind)
        if token is None:
            raise self._error(detail)
        return token

    def parse(self) -> PolyExpr:
        node = self.expr()
        if self.current.kind != "end":
            raise self._error("expected an operator")
        return node

    def expr(self) -> PolyExpr:
        node: PolyExpr = Neg(self.term()) if self._accept("-") else self.term()
        while self.current.kind in ("+", "-"):
            op = self.current.kind
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> PolyExpr:
        node = self.factor()
        while self._accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> PolyExpr:
        node = self.base()
        if self._accept("^"):
            exponent = self._expect("num", "exponent must be a non-negative integer literal")
            node = Pow(node, int(exponent.text))
        return node

    def base(self) -> PolyExpr:
        if token := self._accept("num"):
            value = Fraction(int(token.text))
            if self._accept("/"):
                denominator = self._expect("num", "expected a denominator")
                if int(denominator.text) == 0:
                    raise ExpressionSyntaxError(
                        "zero denominator", denominator.line, denominator.column
                    )
                value /= int(denominator.text)
            return Num(value)
        if token := self._accept("name"):
            return Var(token.text)
        if self._accept("("):
            node = self.expr()
            self._expect(")", "expected ')'")
            return node
        raise self._error("expected a number, a variable or '('")


def parse_poly(text: str) -> PolyExpr:
    return Parser(text).parse()


# Binding strength used by the printer: a child is parenthesized when its own
# level is below the level its position requires.
_SUM, _TERM, _FACTOR, _ATOM = 0, 1, 2, 3


def _level(node: PolyExpr) -> int:
    if isinstance(node, BinOp):
        return _SUM if node.op in "+-" else _TERM
    if isinstance(node, Neg):
        return _SUM
    if isinstance(node, Pow):
        return _FACTOR
    if isinstance(node, Num) and node.value.denominator != 1:
        return _FACTOR
    return _ATOM


def _show(node: PolyExpr, required: int) -> str:
    text = _render(node)
    return f"({text})" if _level(node) < required else text


def _render(node: PolyExpr) -> str:
    match node:
        case Num(value):
            return str(value)
        case Var(name):
            return name
        case Neg(operand):
            return f"-{_show(operand, _TERM)}"
        case Pow(base, exponent):
            return f"{_show(base, _ATOM)}^{exponent}"
        case BinOp("*", left, right):
            return f"{_show(left, _TERM)}*{_show(right, _FACTOR)}"
        case BinOp(op, left, right):
            return f"{_show(left, _SUM)} {op} {_show(right, _TERM)}"
    raise TypeError(f"Not an expression node: {node!r}")


def print_expr(node: PolyExpr) -> str:
    """Inverse of parse_poly up to whitespace and redundant parentheses."""
    return _render(node)


def _variable_key(name: str) -> tuple[int, int]:
    if len(name) == 1:
        return (0, "xyz".index(name))
    return (1, int(name[1:]))


def free_variables(node: PolyExpr) -> set[str]:
    match node:
        case Var(name):
            return {name}
        case Num():
            return set()
        case Neg(operand):
            return free_variables(operand)
        case Pow(base, _):
            return free_variables(base)
        case BinOp(_, left, right):
            return free_variables(left) | free_variables(right)
    raise TypeError(f"Not an expression node: {node!r}")


def variable_order(nodes: Iterable[PolyExpr]) -> tuple[str, ...]:
    """x, y, z first, then x1..x9 by index."""
    names: set[str] = set()
    for node in nodes:
        names |= free_variables(node)
    return tuple(sorted(names, key=_variable_key))


def to_multipoly(
    node: PolyExpr, ring: CoefficientRing, variables: Sequence[str]
) -> MultiPoly:
    match node:
        case Num(value):
            return MultiPoly.constant(ring, variables, value)
        case Var(name):
            if name not in variables:
                raise ValueError(f"Variable {name} is not among {', '.join(variables)}")
            return MultiPoly.gen(ring, variables, name)
        case Neg(operand):
            return -to_multipoly(operand, ring, variables)
        case Pow(base, exponent):
            return to_multipoly(base, ring, variables) ** exponent
        case BinOp(op, left, right):
            a = to_multipoly(left, ring, variables)
            b = to_multipoly(right, ring, variables)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            return a * b
    raise TypeError(f"Not an expression node: {node!r}")
