"""Sparse multivariate polynomials over the rationals.

A polynomial carries a :class:`VarTable` (an ordered tuple of variable names)
and a dict from exponent tuples to nonzero coefficients. The variable order
fixes the graded-lexicographic monomial order used for printing.

Polynomials over different tables combine only when one table is an
order-preserving subset of the other; anything else raises
:class:`IncompatibleVariables` rather than silently merging.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from pinchcert.exactnum import format_rational, norm

__all__ = [
    "IncompatibleVariables",
    "MissingAssignment",
    "MultiPoly",
    "UniView",
    "UnknownVariable",
    "VarTable",
    "common_table",
    "evaluate",
    "parse_poly",
    "partial_derivative",
    "poly_arith",
    "poly_pow",
    "substitute",
    "univariate_view",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class IncompatibleVariables(ValueError):
    pass


class UnknownVariable(ValueError):
    pass


class MissingAssignment(KeyError):
    pass


class VarTable(tuple):
    """Ordered, duplicate-free tuple of variable identifiers."""

    def __new__(cls, names: Iterable[str] = ()):
        if isinstance(names, str):
            names = [names]
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        return super().__new__(cls, names)

    def index(self, name):  # type: ignore[override]
        try:
            return super().index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def without(self, name: str) -> "VarTable":
        return VarTable(v for v in self if v != name)

    def union(self, other: Sequence[str]) -> "VarTable":
        return VarTable(list(self) + [v for v in other if v not in self])

    def is_embeddable_in(self, other: Sequence[str]) -> bool:
        """True if every name appears in ``other`` in the same relative order."""
        it = iter(other)
        return all(any(v == w for w in it) for v in self)


def common_table(a: Sequence[str], b: Sequence[str]) -> VarTable:
    a, b = VarTable(a), VarTable(b)
    if a == b or a.is_embeddable_in(b):
        return b
    if b.is_embeddable_in(a):
        return a
    raise IncompatibleVariables(f"incompatible variable tables {tuple(a)} and {tuple(b)}")


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.vars = vars if isinstance(vars, VarTable) else VarTable(vars)
        nv = len(self.vars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nv or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for variables {tuple(self.vars)}")
            if c:
                clean[exp] = norm(Fraction(c) if not isinstance(c, int) else c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: VarTable, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = object.__new__(cls)
        obj.vars = vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, vars: Iterable[str] = ()) -> "MultiPoly":
        vars = VarTable(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None) -> "MultiPoly":
        vars = VarTable(vars if vars is not None else [name])
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls._raw(vars, {tuple(exp): 1})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return Fraction(next(iter(self._terms.values()), 0))

    def used_vars(self) -> VarTable:
        used = [False] * len(self.vars)
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return VarTable(v for v, u in zip(self.vars, used) if u)

    def degree(self, v: str | None = None) -> int:
        """Degree in ``v`` (total degree if ``v`` is None); -1 for zero."""
        if not self._terms:
            return -1
        if v is None:
            return max(sum(e) for e in self._terms)
        i = self.vars.index(v)
        return max(e[i] for e in self._terms)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def coefficients_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- variable tables ----------------------------------------------

    def with_vars(self, vars: Iterable[str]) -> "MultiPoly":
        """Re-express in another table that contains every used variable."""
        vars = VarTable(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        idx = []
        for i, v in enumerate(self.vars):
            if v in pos:
                idx.append((i, pos[v]))
        missing = [v for v in self.used_vars() if v not in pos]
        if missing:
            raise UnknownVariable(f"variables {missing} not in table {tuple(vars)}")
        n = len(vars)
        out = {}
        for exp, c in self._terms.items():
            new = [0] * n
            for i, j in idx:
                new[j] = exp[i]
            out[tuple(new)] = c
        return MultiPoly._raw(vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        """Same terms under new variable names."""
        return MultiPoly._raw(VarTable(mapping.get(v, v) for v in self.vars), self._terms)

    def compact(self) -> "MultiPoly":
        """Drop variables that never occur."""
        return self.with_vars(self.used_vars())

    def _coerce(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self, MultiPoly.const(other, self.vars)
            return NotImplemented, NotImplemented
        if other.vars == self.vars:
            return self, other
        table = common_table(self.vars, other.vars)
        return self.with_vars(table), other.with_vars(table)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a._terms)
        for exp, c in b._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = norm(s)
            else:
                out.pop(exp, None)
        return MultiPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.vars, {})
            other = norm(Fraction(other)) if isinstance(other, Fraction) else other
            return MultiPoly._raw(self.vars, {e: norm(c * other) for e, c in self._terms.items()})
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out: dict = {}
        get = out.get
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(a.vars, {e: norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ArithmeticError on a remainder."""
        a, b = self._coerce(other)
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if b.is_constant():
            return a * (Fraction(1) / b.constant_value())
        lead_e, lead_c = b.leading_term()
        rem = dict(a._terms)
        quot = {}
        bterms = list(b._terms.items())
        while rem:
            re_, rc = max(rem.items(), key=lambda t: _grlex_key(t[0]))
            if any(x < y for x, y in zip(re_, lead_e)):
                raise ArithmeticError(f"{a} is not divisible by {b}")
            qe = tuple(x - y for x, y in zip(re_, lead_e))
            if isinstance(rc, int) and isinstance(lead_c, int) and rc % lead_c == 0:
                qc = rc // lead_c
            else:
                qc = norm(Fraction(rc) / lead_c)
            quot[qe] = qc
            for be, bc in bterms:
                e = tuple(x + y for x, y in zip(qe, be))
                s = rem.get(e, 0) - qc * bc
                if s:
                    rem[e] = norm(s)
                else:
                    rem.pop(e, None)
        return MultiPoly._raw(a.vars, quot)

    # -- comparison ---------------------------------------------------

    def _named_terms(self) -> frozenset:
        names = self.vars
        return frozenset(
            (tuple(sorted((names[i], k) for i, k in enumerate(e) if k)), c)
            for e, c in self._terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.vars == self.vars:
            return self._terms == other._terms
        return self._named_terms() == other._named_terms()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._named_terms())
        return self._hash

    # -- calculus / substitution --------------------------------------

    def derivative(self, v: str) -> "MultiPoly":
        i = self.vars.index(v)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[ne] = c * e[i]
        return MultiPoly._raw(self.vars, out)

    def univariate_coeffs(self, v: str) -> list["MultiPoly"]:
        """Coefficients in ``v`` (index = degree) as polynomials in the other variables."""
        i = self.vars.index(v)
        rest = self.vars.without(v)
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        deg = max(buckets) if buckets else 0
        return [MultiPoly._raw(rest, buckets.get(d, {})) for d in range(deg + 1)]

    def substitute(self, v: str, q) -> "MultiPoly":
        """Replace ``v`` by ``q``; the result lives in (vars - v) ∪ vars(q)."""
        if not isinstance(q, MultiPoly):
            q = MultiPoly.const(q)
        self.vars.index(v)
        target = self.vars.without(v).union(q.vars) if v not in q.used_vars() else self.vars.union(q.vars)
        coeffs = self.univariate_coeffs(v)
        qq = q.with_vars(target)
        result = MultiPoly._raw(target, {})
        # Horner in q
        for c in reversed(coeffs):
            result = result * qq + c.with_vars(target)
        return result

    def substitute_many(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Simultaneous substitution of several variables."""
        if not mapping:
            return self
        fresh = {}
        p = self
        # rename first so later substitutions cannot capture earlier images
        for k, v in enumerate(mapping):
            tmp = f"zz_subst_{k}"
            fresh[tmp] = mapping[v]
            p = p.rename({v: tmp})
        for tmp, q in fresh.items():
            p = p.substitute(tmp, q)
        return p

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        vals = []
        for v in self.vars:
            if v in point:
                vals.append(Fraction(point[v]))
            else:
                vals.append(None)
        missing = [v for v, x in zip(self.vars, vals) if x is None and v in self.used_vars()]
        if missing:
            raise MissingAssignment(f"no value assigned to {missing}")
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total

    def partial_eval(self, point: Mapping[str, object]) -> "MultiPoly":
        """Substitute constants for some variables and drop them from the table."""
        p = self
        for v, val in point.items():
            p = p.substitute(v, MultiPoly.const(val))
        return p

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({list(self.vars)!r}, {str(self)!r})"


@dataclass(frozen=True)
class UniView:
    main_var: str
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> MultiPoly:
        return self.coeffs[-1]

    def reassemble(self, vars: Sequence[str] | None = None) -> MultiPoly:
        rest = self.coeffs[0].vars
        table = VarTable(vars) if vars is not None else VarTable(list(rest) + [self.main_var])
        x = MultiPoly.var(self.main_var, table)
        out = MultiPoly._raw(table, {})
        for c in reversed(self.coeffs):
            out = out * x + c.with_vars(table)
        return out


# -- functional API ---------------------------------------------------


def parse_poly(text: str, vars: Iterable[str] | None = None) -> MultiPoly:
    from pinchcert.exprparse import parse

    return parse(text, vars)


def poly_arith(op: str, p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_pow(p: MultiPoly, e: int) -> MultiPoly:
    if not isinstance(e, int) or e < 0:
        raise ValueError("exponent must be a nonnegative integer")
    result = MultiPoly.const(1, p.vars)
    base = p
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def partial_derivative(p: MultiPoly, v: str) -> MultiPoly:
    return p.derivative(v)


def substitute(p: MultiPoly, v: str, q: MultiPoly) -> MultiPoly:
    return p.substitute(v, q)


def evaluate(p: MultiPoly, point: Mapping[str, object]) -> Fraction:
    return p.evaluate(point)


def univariate_view(p: MultiPoly, v: str) -> UniView:
    coeffs = p.univariate_coeffs(v)
    return UniView(v, tuple(coeffs))
