"""Symmetric polynomials: detection, elementary reduction, power sums, tau-form.

Elementary symmetric polynomials are named ``sigma1``, ``sigma2``, ... and the
tau-form variable is ``tau`` with ``tau^2 = sigma1^2 - 3*sigma2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from pinchcert.multipoly import MultiPoly, VarTable

__all__ = [
    "ElemSymExpr",
    "NotSymmetric",
    "TauForm",
    "elementary",
    "is_symmetric",
    "power_sum_in_elementary",
    "sigma_names",
    "substitute_even",
    "tau_substitute",
    "to_elementary",
]


class NotSymmetric(ValueError):
    pass


def sigma_names(arity: int) -> VarTable:
    return VarTable(f"sigma{i}" for i in range(1, arity + 1))


def elementary(i: int, vars: Sequence[str]) -> MultiPoly:
    """e_i(vars) as a polynomial over ``vars``."""
    from itertools import combinations

    n = len(vars)
    terms = {}
    for combo in combinations(range(n), i):
        e = [0] * n
        for j in combo:
            e[j] = 1
        terms[tuple(e)] = 1
    return MultiPoly(vars, terms)


@dataclass(frozen=True)
class ElemSymExpr:
    poly: MultiPoly
    arity: int
    source_vars: tuple = ("x", "y", "z")

    def back_substitute(self) -> MultiPoly:
        """Replace sigma_i by e_i(source_vars)."""
        images = {f"sigma{i}": elementary(i, self.source_vars) for i in range(1, self.arity + 1)}
        p = self.poly.with_vars(sigma_names(self.arity))
        out = MultiPoly.const(0, self.source_vars)
        powers: dict = {}
        for e, c in p.items():
            t = MultiPoly.const(c, self.source_vars)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[f"sigma{i + 1}"] ** k
                    t = t * powers[key]
            out = out + t
        return out


@dataclass(frozen=True)
class TauForm:
    poly: MultiPoly

    def __post_init__(self):
        if "tau" in self.poly.vars:
            i = self.poly.vars.index("tau")
            if any(e[i] % 2 for e, _ in self.poly.items()):
                raise ValueError("tau-form must contain only even powers of tau")

    def to_elementary(self) -> MultiPoly:
        """Substitute tau^2 -> sigma1^2 - 3*sigma2."""
        table = VarTable(list(self.poly.vars.without("tau")) + ["sigma2"]) if "sigma2" not in self.poly.vars else self.poly.vars.without("tau")
        s1 = MultiPoly.var("sigma1", table)
        s2 = MultiPoly.var("sigma2", table)
        return substitute_even(self.poly, "tau", s1 * s1 - 3 * s2)


def substitute_even(p: MultiPoly, v: str, q: MultiPoly) -> MultiPoly:
    """Replace ``v^2`` by ``q`` in a polynomial even in ``v``."""
    if v not in p.vars:
        return p
    i = p.vars.index(v)
    halved = {}
    for e, c in p.items():
        if e[i] % 2:
            raise ValueError(f"odd power of {v} in {p}")
        halved[e[:i] + (e[i] // 2,) + e[i + 1 :]] = c
    return MultiPoly(p.vars, halved).substitute(v, q)


def is_symmetric(p: MultiPoly, vars: Sequence[str] | None = None) -> bool:
    """Invariance under each adjacent transposition of ``vars``."""
    vars = list(vars if vars is not None else p.vars)
    idx = [p.vars.index(v) for v in vars]
    terms = p.terms
    for a, b in zip(idx, idx[1:]):
        for e, c in terms.items():
            s = list(e)
            s[a], s[b] = s[b], s[a]
            if terms.get(tuple(s)) != c:
                return False
    return True


def to_elementary(p: MultiPoly, vars: Sequence[str] | None = None) -> ElemSymExpr:
    """Gauss's leading-term reduction to elementary symmetric polynomials."""
    vars = VarTable(vars if vars is not None else p.vars)
    p = p.with_vars(vars)
    if not is_symmetric(p, vars):
        raise NotSymmetric(f"not symmetric in {tuple(vars)}: {p}")
    n = len(vars)
    sig = sigma_names(n)
    es = [elementary(i, vars) for i in range(1, n + 1)]
    rest = p
    out = {}
    while not rest.is_zero():
        lead, c = rest.leading_term()
        # symmetric => leading exponent is weakly decreasing
        d = [lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n)]
        if any(x < 0 for x in d):  # pragma: no cover - impossible for symmetric input
            raise NotSymmetric(f"leading monomial {lead} not sorted")
        out[tuple(d)] = c
        t = MultiPoly.const(c, vars)
        for ei, k in zip(es, d):
            if k:
                t = t * ei**k
        rest = rest - t
    result = ElemSymExpr(MultiPoly(sig, out), n, tuple(vars))
    if result.back_substitute() != p:  # pragma: no cover
        raise AssertionError("symmetric reduction failed its round-trip check")
    return result


def power_sum_in_elementary(m: int, arity: int) -> ElemSymExpr:
    """f_m = sum x_i^m in sigma_1..sigma_arity by Newton's identities."""
    if m < 1 or arity < 1:
        raise ValueError("need m >= 1 and arity >= 1")
    sig = sigma_names(arity)
    e = [MultiPoly.const(1, sig)] + [MultiPoly.var(s, sig) for s in sig]
    zero = MultiPoly.const(0, sig)

    def el(i):
        return e[i] if i <= arity else zero

    f = [MultiPoly.const(arity, sig)]
    for k in range(1, m + 1):
        acc = zero
        for i in range(1, k):
            term = el(i) * f[k - i]
            acc = acc + term if i % 2 == 1 else acc - term
        last = el(k) * k
        acc = acc + last if k % 2 == 1 else acc - last
        f.append(acc)
    source = tuple(f"x{i}" for i in range(1, arity + 1)) if arity != 3 else ("x", "y", "z")
    return ElemSymExpr(f[m], arity, source)


def tau_substitute(e: ElemSymExpr | MultiPoly) -> TauForm:
    """sigma2 -> (sigma1^2 - tau^2)/3; the result is checked to be even in tau."""
    poly = e.poly if isinstance(e, ElemSymExpr) else e
    table = VarTable(["tau" if v == "sigma2" else v for v in poly.vars])
    if "sigma1" not in table:
        table = VarTable(["sigma1"] + list(table))
    s1 = MultiPoly.var("sigma1", table)
    tau = MultiPoly.var("tau", table)
    if "sigma2" in poly.vars:
        renamed = poly.rename({"sigma2": "zz_s2"})
        out = renamed.substitute("zz_s2", (s1 * s1 - tau * tau) / 3).with_vars(table)
    else:
        out = poly.with_vars(table)
    form = TauForm(out)
    if form.to_elementary() != poly:  # pragma: no cover
        raise AssertionError("tau substitution failed its round-trip check")
    return form
