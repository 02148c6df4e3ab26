"""Exact sampling oracle for the eigenvalue inequalities behind the A - 2B bound.

A spectrum is ``lambda_i = mu_i / D`` with integers ``mu_i`` summing to zero.
Every check is multiplied through by a power of ``D`` and decided in integers;
cube roots are removed by comparing ``L^3`` with ``c F``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from pinchcert.certificate import Obligation
from pinchcert.exactnum import format_rational
from pinchcert.multipoly import parse_poly

__all__ = [
    "OracleReport",
    "SampleCheck",
    "SpectralSample",
    "c_constant",
    "certify_c_exceeds_two",
    "check_spectrum",
    "f_direct",
    "f_power_sums",
    "sample_spectra",
]


def c_constant(n, eta) -> Fraction:
    """24/5 - 16/((1 + 1/eta) n)."""
    n, eta = Fraction(n), Fraction(eta)
    return Fraction(24, 5) - 16 / ((1 + 1 / eta) * n)


@dataclass(frozen=True)
class SpectralSample:
    lambdas: tuple

    def __post_init__(self):
        lam = tuple(Fraction(x) for x in self.lambdas)
        if sum(lam) != 0:
            raise ValueError("principal curvatures of a minimal hypersurface must sum to zero")
        object.__setattr__(self, "lambdas", lam)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def S(self) -> Fraction:
        return sum(x * x for x in self.lambdas)

    def integer_form(self) -> tuple[list[int], int]:
        d = math.lcm(*(x.denominator for x in self.lambdas))
        return [int(x * d) for x in self.lambdas], d


def f_direct(lambdas: Sequence) -> Fraction:
    """F = sum over all ordered pairs (i, j) of (l_i - l_j)^2 (1 + l_i l_j)^2."""
    lam = [Fraction(x) for x in lambdas]
    return sum(((a - b) * (1 + a * b)) ** 2 for a in lam for b in lam)


def f_power_sums(lambdas: Sequence) -> Fraction:
    """2 [S f4 - f3^2 - S^2 - S (S - n)] with f_m the power sums."""
    lam = [Fraction(x) for x in lambdas]
    n = len(lam)
    s = sum(x**2 for x in lam)
    f3 = sum(x**3 for x in lam)
    f4 = sum(x**4 for x in lam)
    return 2 * (s * f4 - f3**2 - s**2 - s * (s - n))


@dataclass
class SampleCheck:
    S: Fraction
    f_identity: bool
    margin_triples: Fraction
    margin_pairs: Fraction

    @property
    def margin(self) -> Fraction:
        return min(self.margin_triples, self.margin_pairs)

    @property
    def violated(self) -> bool:
        return self.margin < 0


def _check_integer(mu: list[int], d: int, n: int, cn: int, cd: int) -> SampleCheck:
    d2 = d * d
    s2 = sum(m * m for m in mu)
    f3 = sum(m**3 for m in mu)
    f4 = sum(m**4 for m in mu)
    # F * d^6, both ways
    f6 = 0
    for i, a in enumerate(mu):
        for b in mu[i + 1 :]:
            f6 += ((a - b) * (d2 + a * b)) ** 2
    f6 *= 2
    f6_sums = 2 * (s2 * f4 - f3 * f3 - s2 * s2 * d2 - (s2 * s2 - n * s2 * d2) * d2)
    t_max = max(
        2 * (a * a + b * b + c * c) - (a + b + c) ** 2 for a, b, c in combinations(mu, 3)
    )
    p_max = max(b * b - 4 * a * b for i, a in enumerate(mu) for j, b in enumerate(mu) if i != j)
    base = s2 + 4 * d2
    d6 = d2 * d2 * d2
    denom = cd * d6

    def margin(top: int) -> Fraction:
        ld = top - base  # L * d^2
        return Fraction(cn * f6 - cd * ld**3, denom)

    return SampleCheck(Fraction(s2, d2), f6 == f6_sums, margin(t_max), margin(p_max))


def check_spectrum(lambdas: Sequence, eta) -> SampleCheck | None:
    """Check one spectrum; ``None`` if S lies outside [n, (1 + 1/eta) n]."""
    sample = SpectralSample(tuple(lambdas))
    n = sample.n
    if n < 3:
        raise ValueError("need at least three principal curvatures")
    eta = Fraction(eta)
    s = sample.S
    if not (n <= s <= (1 + 1 / eta) * n):
        return None
    mu, d = sample.integer_form()
    c = c_constant(n, eta)
    return _check_integer(mu, d, n, c.numerator, c.denominator)


@dataclass
class OracleReport:
    trials: int
    violations: int
    f_mismatches: int
    rejected: int
    min_margin: Fraction | None
    config: dict
    c: Fraction
    worst: tuple = ()
    strategies: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.violations == 0 and self.f_mismatches == 0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "f_mismatches": self.f_mismatches,
            "rejected": self.rejected,
            "min_margin": None if self.min_margin is None else format_rational(self.min_margin),
            "min_margin_float": None if self.min_margin is None else float(self.min_margin),
            "c": format_rational(self.c),
            "config": self.config,
            "worst_sample": [format_rational(x) for x in self.worst],
            "strategies": self.strategies,
            "status": "pass" if self.passed else "fail",
        }


def _raw_vector(rng: random.Random, n: int) -> tuple[str, list[int]]:
    kind = rng.choices(["uniform", "clifford", "sparse", "pair"], weights=[4, 3, 2, 1])[0]
    if kind == "uniform":
        k = rng.randint(1, 20)
        return kind, [rng.randint(-k, k) for _ in range(n)]
    if kind == "clifford":
        # k entries near sqrt((n-k)/k), the rest near -sqrt(k/(n-k))
        k = rng.randint(1, n - 1)
        scale = rng.randint(20, 200)
        a = math.sqrt((n - k) / k)
        b = -math.sqrt(k / (n - k))
        noise = rng.choice([0, 1, 2, 5])
        v = [round(scale * a) + rng.randint(-noise, noise) for _ in range(k)]
        v += [round(scale * b) + rng.randint(-noise, noise) for _ in range(n - k)]
        rng.shuffle(v)
        return kind, v
    if kind == "sparse":
        v = [0] * n
        for i in rng.sample(range(n), rng.randint(2, 3)):
            v[i] = rng.randint(-30, 30)
        return kind, v
    # one large pair with product near -1 after scaling, rest small
    v = [rng.randint(-2, 2) for _ in range(n)]
    i, j = rng.sample(range(n), 2)
    m = rng.randint(5, 40)
    v[i], v[j] = m, -m + rng.randint(-3, 3)
    return kind, v


def _scaled(rng: random.Random, v: list[int], n: int, lo: Fraction, hi: Fraction):
    total = sum(v)
    mu0 = [n * x - total for x in v]
    s0 = sum(m * m for m in mu0)
    if s0 == 0:
        return None
    for target in (rng.uniform(float(lo), float(hi)), float(lo + hi) / 2):
        t = Fraction(math.sqrt(target / s0)).limit_denominator(10**4)
        if t == 0:
            continue
        s = t * t * s0
        if lo <= s <= hi:
            return [m * t.numerator for m in mu0], t.denominator
    return None


def sample_spectra(n: int, eta, trials: int, seed: int = 0) -> OracleReport:
    """Draw ``trials`` accepted spectra with S in [n, (1 + 1/eta) n] and check them exactly."""
    eta = Fraction(eta)
    if n < 6 or eta <= 0 or trials < 1:
        raise ValueError("need n >= 6, eta > 0 and trials >= 1")
    rng = random.Random(seed)
    lo, hi = Fraction(n), (1 + 1 / eta) * n
    c = c_constant(n, eta)
    cn, cd = c.numerator, c.denominator
    accepted = rejected = violations = mismatches = 0
    min_margin = None
    worst: tuple = ()
    strategies: dict = {}
    attempts = 0
    while accepted < trials and attempts < 50 * trials:
        attempts += 1
        kind, v = _raw_vector(rng, n)
        scaled = _scaled(rng, v, n, lo, hi)
        if scaled is None:
            rejected += 1
            continue
        mu, d = scaled
        g = math.gcd(d, *mu)
        mu, d = [m // g for m in mu], d // g
        chk = _check_integer(mu, d, n, cn, cd)
        accepted += 1
        strategies[kind] = strategies.get(kind, 0) + 1
        if not chk.f_identity:
            mismatches += 1
        if chk.violated:
            violations += 1
        if min_margin is None or chk.margin < min_margin:
            min_margin = chk.margin
            worst = tuple(Fraction(m, d) for m in mu)
    config = {"n": n, "eta": format_rational(eta), "S_range": [format_rational(lo), format_rational(hi)],
              "seed": seed, "requested_trials": trials}
    return OracleReport(accepted, violations, mismatches, rejected, min_margin, config, c, worst, strategies)


def certify_c_exceeds_two() -> Obligation:
    """c - 2 > 0 for all n >= 6, eta > 0.

    With n = 6 + a and 1/eta = b (a >= 0, b > 0), c - 2 = (14 w - 80) / (5 w) where
    w = (1 + b)(6 + a); the numerator has nonnegative coefficients and constant 4.
    """
    ab = ["a", "b"]
    w = parse_poly("(1 + b)*(6 + a)", ab)
    num = 14 * w - 80
    den = 5 * w
    coeffs = [c for _, c in num.items()]
    const = num.evaluate({"a": 0, "b": 0})
    ok = all(c >= 0 for c in coeffs) and const > 0 and all(c >= 0 for _, c in den.items())
    for n, eta in ((6, 1), (7, Fraction(1, 3)), (100, 18), (6, 10**6)):
        a, b = Fraction(n - 6), 1 / Fraction(eta)
        ok = ok and c_constant(n, eta) - 2 == num.evaluate({"a": a, "b": b}) / den.evaluate({"a": a, "b": b})
    return Obligation(
        "c - 2 > 0 for n >= 6, eta > 0",
        "positivity",
        "pass" if ok else "fail",
        "c > 24/5 - 16/6 > 2",
        {"substitution": "n = 6 + a, 1/eta = b", "numerator": str(num), "denominator": str(den)},
    )
