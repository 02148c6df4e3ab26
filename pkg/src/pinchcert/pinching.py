"""Final integrand coefficients as exact rational functions of n, their
negativity certificates on [n_min, inf), and a feasibility search over the
parameters (eps, sigma, kappa, eta).

The coefficient formulas are written once against plain arithmetic operators,
so the same code runs on :class:`RationalFunctionN` (exact, symbolic in n),
on ``Fraction`` (exact, numeric n) and on ``float`` (screening only).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from pinchcert.certificate import Obligation
from pinchcert.exactnum import as_rational, format_rational
from pinchcert.multipoly import MultiPoly, parse_poly
from pinchcert.realroots import DomainSpec, _rem, _trim, certify_positive, dense, from_dense

__all__ = [
    "DerivedConstants",
    "NegativityCert",
    "OptimizeResult",
    "PinchingParams",
    "RationalFunctionN",
    "SearchConfig",
    "REFERENCE_PARAMS",
    "certify_negative",
    "derived_constants",
    "feasible_at",
    "final_coefficients",
    "integrand_bracket",
    "optimize_eta",
]

VAR = "n"


# -- rational functions of n ---------------------------------------------


def _dense_or_zero(p: MultiPoly) -> list[Fraction]:
    return [] if p.is_zero() else dense(p, VAR)


def _gcd(a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b)
    return [x / a[-1] for x in a]


def _exact_quo(a: list, b: list) -> list:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        t = a[-1] / b[-1]
        q[k] = t
        for i, bc in enumerate(b):
            a[k + i] -= t * bc
        a.pop()
        _trim(a)
    if a:  # pragma: no cover - callers divide by a gcd
        raise ArithmeticError("inexact division")
    return q


class RationalFunctionN:
    """num(n)/den(n) with exact rational coefficients; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.leading_term()[1] < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def var(cls) -> "RationalFunctionN":
        return cls(MultiPoly.var(VAR, [VAR]))

    @classmethod
    def parse(cls, text: str) -> "RationalFunctionN":
        """Inverse of ``str``: ``(num)/(den)`` or a bare polynomial in n."""
        text = text.strip()
        if text.startswith("(") and ")/(" in text and text.endswith(")"):
            num, den = text[1:-1].split(")/(", 1)
            return cls(parse_poly(num, [VAR]), parse_poly(den, [VAR]))
        return cls(parse_poly(text, [VAR]))

    def _lift(self, other) -> "RationalFunctionN":
        if isinstance(other, RationalFunctionN):
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return RationalFunctionN(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunctionN(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionN(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunctionN(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunctionN(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / self ** (-k)
        return RationalFunctionN(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def evaluate(self, n) -> Fraction:
        d = self.den.evaluate({VAR: n})
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at n = {n}")
        return Fraction(self.num.evaluate({VAR: n})) / d

    def __call__(self, n) -> Fraction:
        return self.evaluate(n)

    def reduced(self) -> "RationalFunctionN":
        """Cancel the gcd; scale to integer coefficients with content 1."""
        if self.num.is_zero():
            return RationalFunctionN(MultiPoly.const(0, [VAR]), MultiPoly.const(1, [VAR]))
        a, b = _dense_or_zero(self.num), dense(self.den, VAR)
        g = _gcd(a, b)
        a, b = _exact_quo(a, g), _exact_quo(b, g)
        coeffs = [Fraction(x) for x in a + b]
        scale = math.lcm(*(x.denominator for x in coeffs))
        content = math.gcd(*(int(x * scale) for x in coeffs))
        f = Fraction(scale, content)
        return RationalFunctionN(from_dense([x * f for x in a], VAR), from_dense([x * f for x in b], VAR))

    def numerator_dense(self) -> list[Fraction]:
        return _dense_or_zero(self.num)

    def __str__(self) -> str:
        r = self.reduced()
        if r.den.is_constant():
            return str(r.num / r.den.constant_value())
        return f"({r.num})/({r.den})"

    def __repr__(self) -> str:
        return f"RationalFunctionN({self})"


def _as_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        if set(x.used_vars()) - {VAR}:
            raise ValueError(f"expected a polynomial in {VAR}, got {x}")
        return x.compact().with_vars([VAR]) if x.used_vars() else MultiPoly.const(x.constant_value(), [VAR])
    return MultiPoly.const(as_rational(x), [VAR])


# -- parameters and closed forms ----------------------------------------------


@dataclass(frozen=True)
class PinchingParams:
    eps: Fraction
    sig: Fraction
    kap: Fraction
    eta: Fraction

    def __post_init__(self):
        for name in ("eps", "sig", "kap", "eta"):
            v = as_rational(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive, got {format_rational(v)}")
            object.__setattr__(self, name, v)

    def to_dict(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("eps", "sig", "kap", "eta")}


REFERENCE_PARAMS = PinchingParams(Fraction(1, 18), Fraction(7, 18), Fraction(1, 24), Fraction(18))


def _constants(n, eps, sig, kap, eta):
    b = Fraction(3, 2) - 1 / (n + 4)
    c = Fraction(24, 5) - 16 / ((1 + 1 / eta) * n)
    theta = 3 - Fraction(2, 3) * c * sig**2 - 2 * eps / sig
    tau = c * sig**2 / 6 + 2 / (3 * sig) * (1 / (16 * eps) + 3 * eps / 2)
    return b, c, theta, tau


def _coefficients(n, eps, sig, kap, eta):
    b, c, theta, tau = _constants(n, eps, sig, kap, eta)
    coef_sn = 1 + 1 / (12 * sig * kap) + 2 * eps / (3 * sig) - 2 * tau - Fraction(5, 6) * theta
    coef_const = (
        n + 4
        - Fraction(2, 3) * c * sig**2
        + 2 / (3 * sig) * (2 * (1 + 1 / eta) * n * kap - eps * (n + 3))
        + 2 * tau * n / eta
        - theta * (1 + Fraction(2, 3) * n - b * n / eta)
    )
    return theta, coef_sn, coef_const


@dataclass(frozen=True)
class DerivedConstants:
    b: RationalFunctionN
    c: RationalFunctionN
    theta: RationalFunctionN
    tau_coefficient: RationalFunctionN


def derived_constants(p: PinchingParams) -> DerivedConstants:
    n = RationalFunctionN.var()
    return DerivedConstants(*_constants(n, p.eps, p.sig, p.kap, p.eta))


def final_coefficients(p: PinchingParams) -> tuple[RationalFunctionN, RationalFunctionN]:
    """(coef_sn, coef_const): the bracket equals coef_sn (S - n) + coef_const."""
    _, coef_sn, coef_const = _coefficients(RationalFunctionN.var(), p.eps, p.sig, p.kap, p.eta)
    return coef_sn, coef_const


def integrand_bracket(p: PinchingParams, n, S) -> Fraction:
    """The bracket rebuilt at numeric (n, S) from the inserted bounds, not from the closed forms."""
    n, S = Fraction(n), Fraction(S)
    eps, sig, kap, eta = p.eps, p.sig, p.kap, p.eta
    b, c, theta, tau = _constants(n, eps, sig, kap, eta)
    gradient_terms = 2 * (1 + 1 / eta) * n * kap + (S - n) / (8 * kap) - eps * (2 * n + 3 - S)
    return (
        S + 4
        - Fraction(2, 3) * c * sig**2
        + 2 / (3 * sig) * gradient_terms
        + 2 * tau * (n - S + n / eta)
        - theta * (1 - n / 6 + 5 * S / 6 - b * n / eta)
    )


# -- negativity certificate ----------------------------------------------------


@dataclass
class NegativityCert:
    params: PinchingParams
    n_min: int
    theta: RationalFunctionN
    coef_sn: RationalFunctionN
    coef_const: RationalFunctionN
    theta_nonneg: Obligation
    negativity: list = field(default_factory=list)

    @property
    def obligations(self) -> list:
        return [self.theta_nonneg] + list(self.negativity)

    @property
    def overall(self) -> str:
        return "pass" if all(o.passed for o in self.obligations) else "fail"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "domain": f"n >= {self.n_min}",
            "theta": str(self.theta),
            "coef_sn": str(self.coef_sn),
            "coef_const": str(self.coef_const),
            "obligations": [o.to_dict() for o in self.obligations],
            "overall": self.overall,
        }


def _sign_obligation(f: RationalFunctionN, want: str, dom: DomainSpec, desc: str) -> Obligation:
    """want in {'nonneg', 'neg'}; the denominator sign is certified first."""
    data: dict = {"function": str(f)}
    r = f.reduced()
    den = dense(r.den, VAR)
    den_sign = 0
    for s in (1, -1):
        pc = certify_positive(from_dense([s * x for x in den], VAR), VAR, dom)
        if pc.passed:
            den_sign = s
            data["denominator"] = pc.to_dict()
            break
    if den_sign == 0:
        data["reason"] = "denominator sign not constant on the domain"
        return Obligation(desc, "positivity", "fail", "", data)
    num = r.numerator_dense()
    if not num:
        ok = want == "nonneg"
        data["numerator"] = "0"
        return Obligation(desc, "positivity", "pass" if ok else "fail", "", data)
    s = den_sign if want == "nonneg" else -den_sign
    pc = certify_positive(from_dense([s * x for x in num], VAR), VAR, dom)
    data["numerator"] = pc.to_dict()
    data["numerator_sign_needed"] = "positive" if s * den_sign > 0 else "negative"
    return Obligation(desc, "positivity", "pass" if pc.passed else "fail", "", data)


def certify_negative(p: PinchingParams, n_min: int = 6) -> NegativityCert:
    """theta >= 0 and both coefficients < 0 for every real n >= n_min."""
    dom = DomainSpec.ray_geq(n_min)
    theta, coef_sn, coef_const = _coefficients(RationalFunctionN.var(), p.eps, p.sig, p.kap, p.eta)
    th = _sign_obligation(theta, "nonneg", dom, f"theta >= 0 for n >= {n_min}")
    th.paper_anchor = "restriction theta >= 0"
    neg = [
        _sign_obligation(coef_sn, "neg", dom, f"coefficient of (S - n) < 0 for n >= {n_min}"),
        _sign_obligation(coef_const, "neg", dom, f"constant coefficient < 0 for n >= {n_min}"),
    ]
    neg[0].paper_anchor = "1 + 1/(12 sigma kappa) + 2 eps/(3 sigma) - 2 tau - (5/6) theta"
    neg[1].paper_anchor = "n + 4 - (2/3) c sigma^2 + ... - theta (1 + 2n/3 - b n/eta)"
    return NegativityCert(p, n_min, theta, coef_sn, coef_const, th, neg)


# -- feasibility search ------------------------------------------------------------


@dataclass
class SearchConfig:
    eta_start: Fraction = Fraction(18)
    eta_min: Fraction = Fraction(10)
    bisection_steps: int = 12
    eps_grid: tuple = (0.05, 0.062, 13)
    sig_grid: tuple = (0.38, 0.396, 17)
    kap_grid: tuple = (0.038, 0.046, 9)
    snap_denominator_limit: int = 10**4
    seeds: tuple = ((Fraction(1, 18), Fraction(7, 18), Fraction(1, 24)),)

    def __post_init__(self):
        self.eta_start = as_rational(self.eta_start)
        self.eta_min = as_rational(self.eta_min)
        if not 0 < self.eta_min <= self.eta_start:
            raise ValueError("need 0 < eta_min <= eta_start")
        for name in ("eps_grid", "sig_grid", "kap_grid"):
            g = getattr(self, name)
            if len(g) != 3 or int(g[2]) < 0:
                raise ValueError(f"{name} must be [lo, hi, steps] with steps >= 0")
            setattr(self, name, (float(g[0]), float(g[1]), int(g[2])))
        self.seeds = tuple(tuple(as_rational(x) for x in s) for s in self.seeds)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = {"eta_start", "eta_min", "bisection_steps", "eps_grid", "sig_grid", "kap_grid",
                 "snap_denominator_limit", "seeds"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> "SearchConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    @classmethod
    def tightened(cls) -> "SearchConfig":
        return cls(eta_start=Fraction(18), eta_min=Fraction(17), bisection_steps=14,
                   eps_grid=(0.054, 0.06, 13), sig_grid=(0.382, 0.392, 21), kap_grid=(0.04, 0.045, 11))

    def to_dict(self) -> dict:
        return {
            "eta_start": format_rational(self.eta_start),
            "eta_min": format_rational(self.eta_min),
            "bisection_steps": self.bisection_steps,
            "eps_grid": list(self.eps_grid),
            "sig_grid": list(self.sig_grid),
            "kap_grid": list(self.kap_grid),
            "snap_denominator_limit": self.snap_denominator_limit,
            "seeds": [[format_rational(x) for x in s] for s in self.seeds],
        }


def _axis(lo: float, hi: float, steps: int) -> list[float]:
    if steps <= 0:
        return []
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _candidates(cfg: SearchConfig) -> Iterator[tuple]:
    """Seeds, then the grid in lexicographic (eps, sigma, kappa) order."""
    for s in cfg.seeds:
        yield s
    for e in _axis(*cfg.eps_grid):
        for s in _axis(*cfg.sig_grid):
            for k in _axis(*cfg.kap_grid):
                yield e, s, k


_SCREEN_N = (6.0, 7.0, 10.0, 100.0, 1e4, 1e8)


def _screen(eps: float, sig: float, kap: float, eta: float) -> bool:
    if min(eps, sig, kap, eta) <= 0:
        return False
    for n in _SCREEN_N:
        theta, a, b = _coefficients(n, eps, sig, kap, eta)
        if theta < 0 or a >= 0 or b >= 0:
            return False
    return True


@dataclass
class OptimizeResult:
    status: str
    best_eta: Fraction | None
    params: PinchingParams | None
    cert: NegativityCert | None
    history: list = field(default_factory=list)
    config: SearchConfig | None = None
    n_min: int = 6

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def __iter__(self):
        return iter((self.best_eta, self.params, self.cert))

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "best_eta": None if self.best_eta is None else format_rational(self.best_eta),
            "best_eta_float": None if self.best_eta is None else float(self.best_eta),
            "params": None if self.params is None else self.params.to_dict(),
            "certificate": None if self.cert is None else self.cert.to_dict(),
            "history": self.history,
            "config": None if self.config is None else self.config.to_dict(),
            "n_min": self.n_min,
        }


def feasible_at(eta: Fraction, cfg: SearchConfig, n_min: int) -> tuple[PinchingParams, NegativityCert] | None:
    """First candidate triple at this eta that survives screening and certifies exactly."""
    limit = cfg.snap_denominator_limit
    for cand in _candidates(cfg):
        if not _screen(*(float(x) for x in cand), float(eta)):
            continue
        snapped = [Fraction(x).limit_denominator(limit) for x in cand]
        if min(snapped) <= 0:
            continue
        params = PinchingParams(*snapped, eta)
        cert = certify_negative(params, n_min)
        if cert.passed:
            return params, cert
    return None


def optimize_eta(n_min: int = 6, config: SearchConfig | None = None) -> OptimizeResult:
    """Smallest eta (widest interval [n, n + n/eta]) found feasible, by bisection.

    Floats screen candidates; every accepted point is snapped to rationals and
    certified exactly. The result is feasibility only, not a global optimum.
    """
    if n_min < 6:
        raise ValueError("n_min must be at least 6")
    cfg = config or SearchConfig()
    history: list = []

    def record(eta: Fraction, found) -> None:
        history.append({
            "eta": format_rational(eta),
            "feasible": found is not None,
            "width_over_n": format_rational(1 / eta),
        })

    hi = cfg.eta_start
    found = feasible_at(hi, cfg, n_min)
    record(hi, found)
    if found is None:
        return OptimizeResult("infeasible under config", None, None, None, history, cfg, n_min)
    best = (hi, *found)
    lo = cfg.eta_min
    found_lo = feasible_at(lo, cfg, n_min) if lo < hi else None
    if lo < hi:
        record(lo, found_lo)
    if found_lo is not None:
        best = (lo, *found_lo)
    else:
        for _ in range(cfg.bisection_steps):
            mid = ((lo + hi) / 2).limit_denominator(cfg.snap_denominator_limit)
            if not lo < mid < hi:
                break
            found = feasible_at(mid, cfg, n_min)
            record(mid, found)
            if found is None:
                lo = mid
            else:
                hi = mid
                best = (mid, *found)
    eta, params, cert = best
    return OptimizeResult("feasible", eta, params, cert, history, cfg, n_min)
