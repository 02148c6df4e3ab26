"""Exact integers and canonical rationals.

Python's ``int`` already is an arbitrary-precision signed integer with a
unique zero, and :class:`fractions.Fraction` keeps ``gcd(num, den) == 1`` and
``den > 0`` after every operation, so both are used directly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Rational",
    "RationalLike",
    "as_rational",
    "format_rational",
    "norm",
    "parse_integer",
    "parse_rational",
    "rat_binop",
    "rat_make",
]

Rational = Fraction
RationalLike = Union[int, Fraction]

_INT_RE = re.compile(r"-?\d+")
_RAT_RE = re.compile(r"\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?")
_DEC_RE = re.compile(r"\s*(-?)(\d*)\.(\d+)\s*|\s*(-?)(\d+)\.\s*")


def parse_integer(text: str) -> int:
    """Parse optional '-' followed by decimal digits, nothing else."""
    if not isinstance(text, str) or not _INT_RE.fullmatch(text):
        raise ValueError(f"not an integer literal: {text!r}")
    return int(text)


def rat_make(num, den=1) -> Fraction:
    """Canonical rational ``num/den`` from integer text or ints.

    >>> rat_make("6", "4")
    Fraction(3, 2)
    """
    n = parse_integer(num) if isinstance(num, str) else int(num)
    d = parse_integer(den) if isinstance(den, str) else int(den)
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(n, d)


def rat_binop(op: str, a: Fraction, b: Fraction):
    """Apply ``add``, ``sub``, ``mul``, ``div`` or ``cmp`` to two rationals.

    ``cmp`` returns one of ``"less"``, ``"equal"``, ``"greater"``.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if op == "cmp":
        return "less" if a < b else "greater" if a > b else "equal"
    raise ValueError(f"unknown rational operation {op!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``a``, ``a/b`` or a decimal literal such as ``17.93`` exactly."""
    m = _RAT_RE.fullmatch(text)
    if m:
        return rat_make(m.group(1), m.group(2) or "1")
    m = _DEC_RE.fullmatch(text)
    if m:
        if m.group(3) is not None:
            sign, whole, frac = m.group(1), m.group(2) or "0", m.group(3)
        else:
            sign, whole, frac = m.group(4), m.group(5), ""
        value = Fraction(int(whole + frac), 10 ** len(frac))
        return -value if sign else value
    raise ValueError(f"not a rational literal: {text!r}")


def format_rational(q: RationalLike) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def norm(c):
    """Demote integral Fractions to int; integer arithmetic is much faster."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c
