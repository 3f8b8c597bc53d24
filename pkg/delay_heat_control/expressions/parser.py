"""
Recursive-descent parser for data expressions.

Grammar (loosest binding first):

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?          right associative
    primary := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"

so -x^2 is -(x^2) and 2^3^2 is 2^9.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from delay_heat_control.exceptions import ExprSyntaxError, UnknownIdentifier
from delay_heat_control.expressions.nodes import (
    CONSTANTS,
    FUNCTIONS,
    VARIABLES,
    Binary,
    Bindings,
    Call,
    Expr,
    Name,
    Number,
    Unary,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)

KNOWN_NAMES = VARIABLES + CONSTANTS


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "op" or "end"
    text: str
    offset: int


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


def tokenize(source: str) -> List[Token]:
    tokens = []
    index = 0
    while True:
        while index < len(source) and source[index].isspace():
            index += 1
        if index >= len(source):
            break
        match = _TOKEN.match(source, index)
        if match is None or match.end() == index:
            raise ExprSyntaxError(
                source, _byte_offset(source, index), f"unexpected character '{source[index]}'"
            )
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), _byte_offset(source, start)))
        index = match.end()
    tokens.append(Token("end", "", _byte_offset(source, len(source))))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def error(self, reason: str, token: Optional[Token] = None) -> ExprSyntaxError:
        token = token or self.current
        return ExprSyntaxError(self.source, token.offset, reason)

    def expect(self, text: str) -> Token:
        if self.current.kind != "op" or self.current.text != text:
            found = self.current.text or "end of input"
            raise self.error(f"expected '{text}' but found '{found}'")
        return self.advance()

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise self.error("empty expression")
        tree = self.expression()
        if self.current.kind != "end":
            raise self.error(f"unexpected '{self.current.text}'")
        return tree

    def expression(self) -> Expr:
        tree = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            tree = Binary(op, tree, self.term())
        return tree

    def term(self) -> Expr:
        tree = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            tree = Binary(op, tree, self.unary())
        return tree

    def unary(self) -> Expr:
        if self.current.kind == "op" and self.current.text == "-":
            self.advance()
            return Unary(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            return Binary("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Number(float(token.text))
        if token.kind == "name":
            self.advance()
            if token.text in FUNCTIONS:
                if not (self.current.kind == "op" and self.current.text == "("):
                    raise self.error(f"function '{token.text}' needs a parenthesized argument")
                self.advance()
                argument = self.expression()
                self.expect(")")
                return Call(token.text, argument)
            if token.text not in KNOWN_NAMES:
                raise UnknownIdentifier(token.text, token.offset, ", ".join(KNOWN_NAMES))
            return Name(token.text)
        if token.kind == "op" and token.text == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if token.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected '{token.text}'")


def parse(source: str) -> Expr:
    """
    Parse an expression.

    Raises:
        ExprSyntaxError: With the byte offset of the offending token
        UnknownIdentifier: For names outside x, t, s, pi, tau, l, T

    Example:
        >>> eval_expr(parse("2+3*4"), {})
        14.0
    """
    return _Parser(source).parse()


def eval_expr(expr: Expr, bindings: Bindings) -> Union[float, np.ndarray]:
    """
    Evaluate a parsed expression; pi is always bound.

    Raises:
        UnboundVariable: If a referenced name has no binding
        DomainError: Division by zero, sqrt of a negative, negative base
            with non-integer exponent, or exp overflow
    """
    value = np.asarray(expr.evaluate(bindings), dtype=float)
    return float(value) if value.ndim == 0 else value


__all__ = ["KNOWN_NAMES", "Token", "eval_expr", "parse", "tokenize"]
