"""Expression parser for rational functions.

Grammar (precedence climbing, highest first):

    ^            right-associative, exponent must be a non-negative integer
    unary -
    * /          left-associative
    + -          left-associative

Atoms are integer literals, declared variables, and parenthesized
expressions.  Every operator works by exact arithmetic on normalized
rational functions, so parse -> print -> parse is the identity on normal
forms.
"""

from __future__ import annotations

import re
from typing import List, Sequence, Tuple

from .dynsys import DynamicalSystem
from .errors import ParseError
from .exactalg import RationalFunction

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

_TOKEN_RE = re.compile(r"""
    (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>\^|\*|/|\+|-|\(|\))
  | (?P<ws>\s+)
  | (?P<bad>.)
""", re.VERBOSE)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(src: str) -> List[_Token]:
    tokens = []
    line, col = 1, 1
    for m in _TOKEN_RE.finditer(src):
        kind = m.lastgroup
        text = m.group()
        if kind == "bad":
            raise ParseError(f"unexpected character {text!r}", line, col)
        if kind != "ws":
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], variables: Tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> RationalFunction:
        value = self.expression()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expression(self) -> RationalFunction:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = value + rhs if op.text == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    self.fail("division by zero", op)
                value = value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.peek().text == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek().text == "^":
            op = self.next()
            expo = self.exponent()
            return base ** expo
        return base

    def exponent(self) -> int:
        # right-associative: x^2^3 = x^(2^3); exponents are constant and >= 0
        tok = self.peek()
        atom = self.atom()
        if self.peek().text == "^":
            self.next()
            inner = self.exponent()
            value = atom.constant_value() ** inner if atom.is_constant else None
        else:
            value = atom.constant_value() if atom.is_constant else None
        if value is None or value.denominator != 1 or value < 0:
            self.fail("exponent must be a non-negative integer", tok)
        return int(value)

    def atom(self) -> RationalFunction:
        tok = self.next()
        if tok.kind == "num":
            return RationalFunction.constant(self.variables, int(tok.text))
        if tok.kind == "ident":
            if tok.text not in self.variables:
                self.fail(f"undeclared identifier {tok.text!r}", tok)
            return RationalFunction.variable(self.variables, tok.text)
        if tok.text == "(":
            value = self.expression()
            closing = self.next()
            if closing.text != ")":
                self.fail("expected ')'", closing)
            return value
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_expression(src: str, variables: Sequence[str]) -> RationalFunction:
    """Parse a rational expression over the declared variables."""
    vars_t = tuple(variables)
    if not vars_t:
        raise ParseError("no variables declared")
    seen = set()
    for v in vars_t:
        if not IDENT_RE.fullmatch(v):
            raise ParseError(f"invalid variable name {v!r}")
        if v in seen:
            raise ParseError(f"duplicate variable name {v!r}")
        seen.add(v)
    return _Parser(_tokenize(src), vars_t).parse()


def parse_map(variables: Sequence[str], expressions: Sequence[str]) -> DynamicalSystem:
    """Convenience builder: one coordinate expression per variable."""
    vars_t = tuple(variables)
    coords = tuple(parse_expression(src, vars_t) for src in expressions)
    return DynamicalSystem(vars_t, coords)
