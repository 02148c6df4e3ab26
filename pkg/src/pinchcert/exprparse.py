"""Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' INT) unary?)*      # '/' only by an integer literal
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Implicit multiplication is rejected, as are decimal literals.
"""

from __future__ import annotations

import re
from typing import Iterable

from pinchcert.multipoly import MultiPoly, UnknownVariable, VarTable

__all__ = ["ParseError", "parse", "tokenize", "identifiers"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def identifiers(text: str) -> list[str]:
    """Variable names in order of first appearance."""
    seen: list[str] = []
    for kind, val, _ in tokenize(text):
        if kind == "ident" and val not in seen:
            seen.append(val)
    return seen


class _Parser:
    def __init__(self, text: str, vars: VarTable):
        self.tokens = tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> MultiPoly:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return result

    def expr(self) -> MultiPoly:
        left = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                right = self.term()
                left = left + right if val == "+" else left - right
            else:
                return left

    def term(self) -> MultiPoly:
        left = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                left = left * self.unary()
            elif kind == "op" and val == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or "." in v2:
                    raise ParseError("division only by a nonzero integer literal", p2)
                if int(v2) == 0:
                    raise ParseError("division by zero", p2)
                left = left / int(v2)
            else:
                return left

    def unary(self) -> MultiPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.unary()
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 == "op" and v2 == "-":
                raise ParseError("exponent must be nonnegative", p2)
            if k2 != "num" or "." in v2:
                raise ParseError("non-integer exponent", p2)
            base = base ** int(v2)
            k3, v3, p3 = self.peek()
            if k3 == "op" and v3 == "^":
                raise ParseError("chained exponent; use parentheses", p3)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.take()
        if kind == "num":
            if "." in val:
                raise ParseError("decimal literals are not allowed", pos)
            return MultiPoly.const(int(val), self.vars)
        if kind == "ident":
            if val not in self.vars:
                raise UnknownVariable(f"unknown variable {val!r} at position {pos}")
            return MultiPoly.var(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, vars: Iterable[str] | None = None) -> MultiPoly:
    """Parse ``text`` into a polynomial over ``vars``.

    With ``vars=None`` the table is the identifiers in order of first appearance.
    """
    table = VarTable(identifiers(text) if vars is None else vars)
    return _Parser(text, table).parse()
