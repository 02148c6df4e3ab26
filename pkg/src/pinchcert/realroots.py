"""Sturm chains, exact real-root counting and positivity certificates.

Work happens on dense coefficient lists (index = degree) of Fractions; the
public functions accept and return :class:`MultiPoly` in a single variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from pinchcert.exactnum import format_rational
from pinchcert.multipoly import MultiPoly, VarTable

__all__ = [
    "DomainSpec",
    "NotUnivariate",
    "PositivityCert",
    "SturmSeq",
    "certify_positive",
    "certify_product_positive",
    "count_real_roots",
    "dense",
    "from_dense",
    "sturm_sequence",
]


class NotUnivariate(ValueError):
    pass


# -- dense helpers ------------------------------------------------------


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def dense(p: MultiPoly, v: str) -> list[Fraction]:
    if p.is_zero():
        raise ValueError("zero polynomial")
    others = [w for w in p.used_vars() if w != v]
    if others:
        raise NotUnivariate(f"expected a polynomial in {v} only, found {others}")
    if v not in p.vars:
        return [p.constant_value()]
    i = p.vars.index(v)
    out = [Fraction(0)] * (p.degree(v) + 1)
    for e, c in p.items():
        out[e[i]] += c
    return out


def from_dense(c: Sequence, v: str) -> MultiPoly:
    return MultiPoly([v], {(i,): a for i, a in enumerate(c) if a})


def _rem(a: list, b: list) -> list:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        a.pop()
        _trim(a)
    return a


def _derivative(c: list) -> list:
    return [i * c[i] for i in range(1, len(c))]


def _eval(c: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _shift(c: Sequence, a: Fraction) -> list:
    """Coefficients of p(t + a) via repeated synthetic division."""
    c = [Fraction(x) for x in c]
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _cauchy_bound(c: Sequence) -> Fraction:
    lead = abs(c[-1])
    return 1 + max((abs(x) / lead for x in c[:-1]), default=Fraction(0))


# -- Sturm chains ---------------------------------------------------------


@dataclass(frozen=True)
class SturmSeq:
    var: str
    polys: tuple

    @property
    def squarefree(self) -> bool:
        return self.polys[-1].is_constant()

    def dense_chain(self) -> list[list[Fraction]]:
        return [dense(p, self.var) for p in self.polys]

    def variations_at(self, x) -> int:
        return _variations([_eval(c, Fraction(x)) for c in self.dense_chain()])

    def variations_at_infinity(self, positive: bool) -> int:
        return _variations_inf(self.dense_chain(), positive)


def _variations(values) -> int:
    signs = [_sign(x) for x in values if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _chain(c: list) -> list[list]:
    chain = [c]
    d = _derivative(c)
    if not _trim(d):
        return chain
    chain.append(d)
    while True:
        r = _rem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-x for x in r])


def sturm_sequence(p: MultiPoly, v: str) -> SturmSeq:
    """p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i) until the remainder vanishes."""
    c = dense(p, v)
    return SturmSeq(v, tuple(from_dense(x, v) for x in _chain(c)))


# -- domains ----------------------------------------------------------------


@dataclass(frozen=True)
class DomainSpec:
    """Closed real domains: ℝ, [a, ∞), (-∞, b] or [a, b]."""

    kind: str
    lo: Fraction | None = None
    hi: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("whole-line", "ray-geq", "ray-leq", "segment"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "segment" and self.lo > self.hi:
            raise ValueError("segment endpoints must satisfy a <= b")

    @classmethod
    def whole_line(cls) -> "DomainSpec":
        return cls("whole-line")

    @classmethod
    def ray_geq(cls, a) -> "DomainSpec":
        return cls("ray-geq", lo=Fraction(a))

    @classmethod
    def ray_leq(cls, b) -> "DomainSpec":
        return cls("ray-leq", hi=Fraction(b))

    @classmethod
    def segment(cls, a, b) -> "DomainSpec":
        return cls("segment", lo=Fraction(a), hi=Fraction(b))

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        from pinchcert.exactnum import parse_rational

        t = text.strip()
        if t == "all":
            return cls.whole_line()
        if t.startswith("geq "):
            return cls.ray_geq(parse_rational(t[4:].strip()))
        if t.startswith("leq "):
            return cls.ray_leq(parse_rational(t[4:].strip()))
        if "," in t:
            a, b = t.split(",", 1)
            return cls.segment(parse_rational(a.strip()), parse_rational(b.strip()))
        raise ValueError(f"bad domain {text!r}; use 'a,b', 'geq a', 'leq b' or 'all'")

    def contains(self, x) -> bool:
        x = Fraction(x)
        return (self.lo is None or x >= self.lo) and (self.hi is None or x <= self.hi)

    def sample_point(self) -> Fraction:
        if self.kind == "whole-line":
            return Fraction(0)
        if self.kind == "ray-leq":
            return self.hi
        return self.lo

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.lo is not None:
            d["lo"] = format_rational(self.lo)
        if self.hi is not None:
            d["hi"] = format_rational(self.hi)
        return d

    def __str__(self) -> str:
        if self.kind == "whole-line":
            return "(-inf, inf)"
        if self.kind == "ray-geq":
            return f"[{format_rational(self.lo)}, inf)"
        if self.kind == "ray-leq":
            return f"(-inf, {format_rational(self.hi)}]"
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def _nudge(c: list, a: Fraction) -> Fraction:
    """A positive rational below the distance from root ``a`` to any other root.

    Deflate ``(t)^mult`` from p(t + a); the Cauchy lower bound on the roots of the
    cofactor, halved, separates ``a`` from every other root.
    """
    q = _shift(c, a)
    while q and q[0] == 0:
        q.pop(0)
    if len(q) <= 1:
        return Fraction(1)
    rev = list(reversed(q))
    return 1 / (2 * _cauchy_bound(rev))


def _count_open(chain, lo, hi) -> int:
    """Distinct roots strictly between non-root endpoints (None = infinite)."""

    def var(x, positive):
        if x is None:
            return _variations_inf(chain, positive)
        return _variations([_eval(c, x) for c in chain])

    return var(lo, False) - var(hi, True)


def _variations_inf(chain, positive: bool) -> int:
    signs = []
    for c in chain:
        s = _sign(c[-1])
        if not positive and (len(c) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def _closed_count(c: list, dom: DomainSpec) -> tuple[int, dict]:
    chain = _chain(c)
    nudges = {}
    lo, hi = dom.lo, dom.hi
    if lo is not None and _eval(c, lo) == 0:
        eps = _nudge(c, lo)
        nudges["lo"] = eps
        lo = lo - eps
    if hi is not None and _eval(c, hi) == 0:
        eps = _nudge(c, hi)
        nudges["hi"] = eps
        hi = hi + eps
    if dom.kind == "segment" and dom.lo == dom.hi:
        return (1 if _eval(c, dom.lo) == 0 else 0), nudges
    return _count_open(chain, lo, hi), nudges


def count_real_roots(p: MultiPoly, v: str, dom: DomainSpec | None = None) -> int:
    """Distinct real roots of ``p`` in the closed domain ``dom``."""
    c = dense(p, v)
    return _closed_count(c, dom or DomainSpec.whole_line())[0]


def count_real_roots_detailed(p: MultiPoly, v: str, dom: DomainSpec) -> tuple[int, dict]:
    """Like :func:`count_real_roots`, also returning any endpoint nudges used."""
    return _closed_count(dense(p, v), dom)


def _isolate(c: list, dom: DomainSpec, steps: int = 30) -> tuple[Fraction, Fraction]:
    """Bisect down to a short interval inside ``dom`` holding at least one root."""
    bound = _cauchy_bound(c)
    lo = dom.lo if dom.lo is not None else -bound
    hi = dom.hi if dom.hi is not None else bound
    lo, hi = max(lo, -bound), min(hi, bound)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if _eval(c, mid) == 0:
            return mid, mid
        if _closed_count(c, DomainSpec.segment(lo, mid))[0] > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- positivity -------------------------------------------------------------


@dataclass
class PositivityCert:
    subject: MultiPoly
    var: str
    domain: DomainSpec
    method: str
    status: str
    witnesses: dict = field(default_factory=dict)
    factors: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = {
            "subject": str(self.subject),
            "var": self.var,
            "domain": self.domain.to_dict(),
            "method": self.method,
            "status": self.status,
            "witnesses": self.witnesses,
        }
        if self.factors:
            d["factors"] = [f.to_dict() for f in self.factors]
        return d


def _nonneg_shift_check(c: list, a: Fraction) -> tuple[bool, list]:
    shifted = _shift(c, a)
    ok = all(x >= 0 for x in shifted) and shifted[0] > 0
    return ok, shifted


def certify_positive(p: MultiPoly, v: str, dom: DomainSpec | None = None) -> PositivityCert:
    """Certify ``p > 0`` on the closed domain; failure is returned, not raised.

    On a ray ``[a, ∞)`` the nonnegative-coefficient test on ``p(t + a)`` is tried
    first; otherwise the domain must hold no root and one sample must be positive.
    """
    dom = dom or DomainSpec.whole_line()
    c = dense(p, v)
    pu = p.compact().with_vars([v]) if p.used_vars() else MultiPoly.const(p.constant_value(), [v])
    if dom.kind == "ray-geq":
        ok, shifted = _nonneg_shift_check(c, dom.lo)
        if ok:
            return PositivityCert(
                pu, v, dom, "nonneg-coeffs-ray", "pass",
                {"shift": format_rational(dom.lo),
                 "shifted_coeffs": [format_rational(x) for x in shifted]},
            )
    roots, nudges = _closed_count(c, dom)
    x0 = dom.sample_point()
    y0 = _eval(c, x0)
    witnesses = {
        "root_count": roots,
        "sample": {"at": format_rational(x0), "value": format_rational(y0)},
    }
    if nudges:
        witnesses["endpoint_nudges"] = {k: format_rational(e) for k, e in nudges.items()}
    if roots == 0 and y0 > 0:
        return PositivityCert(pu, v, dom, "sturm-no-roots+sample", "pass", witnesses)
    if roots > 0:
        a, b = _isolate(c, dom)
        witnesses["root_interval"] = [format_rational(a), format_rational(b)]
    return PositivityCert(pu, v, dom, "sturm-no-roots+sample", "fail", witnesses)


def certify_product_positive(
    constant, factors: Sequence[tuple[MultiPoly, int]], v: str, dom: DomainSpec
) -> PositivityCert:
    """Certify ``constant * prod(f_i^e_i) > 0`` from certified-positive factors."""
    constant = Fraction(constant)
    certs = [certify_positive(f, v, dom) for f, _ in factors]
    product = MultiPoly.const(constant, [v])
    for f, e in factors:
        product = product * f.with_vars([v]) ** e
    ok = constant > 0 and all(c.passed for c in certs)
    return PositivityCert(
        product, v, dom, "factor-product", "pass" if ok else "fail",
        {"constant": format_rational(constant), "exponents": [e for _, e in factors]},
        certs,
    )
