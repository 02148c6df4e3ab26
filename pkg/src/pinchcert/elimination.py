"""Sylvester matrices, resultants and discriminants by fraction-free elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from pinchcert.multipoly import MultiPoly, VarTable, common_table

__all__ = [
    "DegreeZero",
    "ElimResult",
    "SylMatrix",
    "determinant_fraction_free",
    "discriminant",
    "resultant",
    "sylvester_matrix",
]


class DegreeZero(ValueError):
    pass


@dataclass(frozen=True)
class SylMatrix:
    var: str
    degrees: tuple[int, int]
    entries: tuple[tuple[MultiPoly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[MultiPoly]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class ElimResult:
    value: MultiPoly
    eliminated_var: str
    degrees: tuple[int, int]

    def __str__(self) -> str:
        return str(self.value)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, v: str) -> SylMatrix:
    table = common_table(p.vars, q.vars)
    p, q = p.with_vars(table), q.with_vars(table)
    pc = p.univariate_coeffs(v)
    qc = q.univariate_coeffs(v)
    m, k = p.degree(v), q.degree(v)
    if m < 1 or k < 1:
        raise DegreeZero(f"degree zero in {v}: deg(p)={m}, deg(q)={k}")
    rest = table.without(v)
    zero = MultiPoly.const(0, rest)
    size = m + k
    rows = []
    # k rows of P, then m rows of Q, each shifted right by its row index
    for shift in range(k):
        row = [zero] * size
        for j, c in enumerate(reversed(pc)):
            row[shift + j] = c
        rows.append(tuple(row))
    for shift in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(qc)):
            row[shift + j] = c
        rows.append(tuple(row))
    return SylMatrix(v, (m, k), tuple(rows))


def _as_poly_matrix(mat) -> tuple[list[list[MultiPoly]], VarTable]:
    rows = [list(r) for r in (mat.entries if isinstance(mat, SylMatrix) else mat)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    table = VarTable()
    for r in rows:
        for x in r:
            if isinstance(x, MultiPoly):
                table = common_table(table, x.vars)
    out = [
        [x.with_vars(table) if isinstance(x, MultiPoly) else MultiPoly.const(Fraction(x), table) for x in r]
        for r in rows
    ]
    return out, table


def determinant_fraction_free(mat) -> MultiPoly:
    """Bareiss elimination; every division is exact in the polynomial ring."""
    m, table = _as_poly_matrix(mat)
    n = len(m)
    if n == 0:
        return MultiPoly.const(1, table)
    sign = 1
    prev = MultiPoly.const(1, table)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.const(0, table)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j]
                if not mik.is_zero():
                    num = num - mik * row_k[j]
                row_i[j] = num.exact_div(prev) if not num.is_zero() else num
            row_i[k] = MultiPoly.const(0, table)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(p: MultiPoly, q: MultiPoly, v: str) -> ElimResult:
    syl = sylvester_matrix(p, q, v)
    return ElimResult(determinant_fraction_free(syl), v, syl.degrees)


def discriminant(p: MultiPoly, v: str) -> ElimResult:
    """``(-1)^(m(m-1)/2) / p_m * res_v(p, p')`` with an exact division by ``p_m``."""
    m = p.degree(v)
    if m < 1:
        raise DegreeZero(f"degree zero in {v}")
    rest = p.vars.without(v)
    if m == 1:
        return ElimResult(MultiPoly.const(1, rest), v, (1, 0))
    lead = p.univariate_coeffs(v)[-1]
    res = resultant(p, p.derivative(v), v).value
    try:
        value = res.exact_div(lead)
    except ArithmeticError as exc:  # pragma: no cover - would mean an arithmetic bug
        raise RuntimeError(f"internal error: leading coefficient does not divide resultant: {exc}")
    if (m * (m - 1) // 2) % 2:
        value = -value
    return ElimResult(value, v, (m, m - 1))


def cofactor_determinant(mat: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along the first row; factorial cost, kept as a reference."""
    m, table = _as_poly_matrix(mat)

    def rec(rows: list[list[MultiPoly]]) -> MultiPoly:
        if not rows:
            return MultiPoly.const(1, table)
        if len(rows) == 1:
            return rows[0][0]
        total = MultiPoly.const(0, table)
        for j, a in enumerate(rows[0]):
            if a.is_zero():
                continue
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = a * rec(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return rec(m)
