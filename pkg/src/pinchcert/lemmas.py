"""Machine-checked certificates for the four algebraic lemmas.

Each certificate is a list of independent obligations (identities, resultant
and discriminant matches, root counts, positivity, exact spot checks).  The
lemmas depend on each other as ``ineqef <- alineq2`` and ``ineqks <- alineq1``;
:func:`certify_all` runs them in that order and reuses finished certificates.
"""

from __future__ import annotations

from fractions import Fraction
from graphlib import TopologicalSorter
from typing import Callable, Sequence

from pinchcert.certificate import Certificate, Obligation, check_identity
from pinchcert.elimination import discriminant, resultant
from pinchcert.exactnum import format_rational
from pinchcert.multipoly import MultiPoly, parse_poly
from pinchcert.realroots import (
    DomainSpec,
    PositivityCert,
    certify_positive,
    certify_product_positive,
    count_real_roots,
    sturm_sequence,
)
from pinchcert.oracle import OracleReport, SpectralSample, certify_c_exceeds_two, check_spectrum, sample_spectra
from pinchcert.symmetric import tau_substitute, to_elementary

__all__ = [
    "OracleReport",
    "SpectralSample",
    "certify_c_exceeds_two",
    "check_spectrum",
    "sample_spectra",
    "DEPENDENCIES",
    "LEMMAS",
    "certify_all",
    "certify_bivariate_positive",
    "certify_lemma",
    "certify_lemma_alineq1",
    "certify_lemma_alineq2",
    "certify_lemma_ineqef",
    "certify_lemma_ineqks",
    "check_identity",
    "lemma_order",
]

# -- the displayed polynomials ------------------------------------------------

SIG_TAU = ["sigma", "tau"]
INEQEF_LHS = (
    "6*tau^6 + 4*(4*sigma^2 + 9)*tau^4 - 2*(10*sigma^4 + 108*sigma^2 + 243)*tau^2"
    " + 7*sigma^6 + 126*sigma^4 + 729*sigma^2 + 1296"
)
INEQEF_ABS_PART = "sigma^3 - 2*sigma*tau^2 + 9*sigma"
INEQEF_DISC_CONST = -102036672
INEQEF_DISC_FACTORS = [
    ("sigma^2 + 6", 3),
    ("12*sigma^12 + 508*sigma^10 + 9034*sigma^8 + 86582*sigma^6 + 471177*sigma^4"
     " + 1376352*sigma^2 + 1679616", 1),
]
INEQEF_SLICE = "tau^6 + 18*tau^4 - 243*tau^2 + 648"

XYZ = ["x", "y", "z"]
ALINEQ2_P = (
    "2*(x*y + y*z + z*x + 2)^3 + (x - y)^2*(x*y + 1)^2 + (x - z)^2*(x*z + 1)^2"
    " + (z - y)^2*(y*z + 1)^2"
)
ALINEQ2_LHS = "-2*(x*y + y*z + z*x + 2)^3"
ALINEQ2_RHS = "(x - y)^2*(x*y + 1)^2 + (x - z)^2*(x*z + 1)^2 + (z - y)^2*(y*z + 1)^2"
SIGMAS = ["sigma1", "sigma2", "sigma3"]
ALINEQ2_SIGMA_FORM = (
    "-9*sigma3^2 + (-2*sigma1^3 + 10*sigma2*sigma1 + 6*sigma1)*sigma3 - 2*sigma2^3"
    " + sigma1^2*sigma2^2 + 4*sigma2^2 + 2*sigma1^2*sigma2 + 18*sigma2 + 2*sigma1^2 + 16"
)
TAU_VARS = ["sigma1", "tau", "sigma3"]
ALINEQ2_SQUARE = "(-5*sigma1*tau^2 + 2*sigma1^3 + 9*sigma1 - 27*sigma3)^2"
ALINEQ2_SEXTIC = (
    "6*tau^6 + 4*(4*sigma1^2 + 9)*tau^4 - 2*(10*sigma1^4 + 108*sigma1^2 + 243)*tau^2"
    " + 7*sigma1^6 + 126*sigma1^4 + 729*sigma1^2 + 1296"
)
CUBIC = "lambda^3 - sigma1*lambda^2 + sigma2*lambda - sigma3"
CUBIC_DISC = (
    "sigma1^2*sigma2^2 - 4*sigma2^3 - 4*sigma1^3*sigma3 - 27*sigma3^2 + 18*sigma1*sigma2*sigma3"
)
CUBIC_DISC_TAU = "4/27*tau^6 - 1/27*(3*sigma1*tau^2 - sigma1^3 + 27*sigma3)^2"

SK = ["s", "k"]
RK = ["r", "k"]
INEQKS_ORIG = "16*(3*s - 10)*(k - 1)^2*(k^2 + k*s + 1)^2 + 5*(4*k^2 + 4*k*s + s + 4)^3"
INEQKS_P = "16*(3*r + 8)*(k - 1)^2*(k^2 + k*(r + 6) + 1)^2 + 5*(4*k^2 + 4*k*(r + 6) + r + 10)^3"
INEQKS_DISC_CONST = -8388608000
INEQKS_DISC_FACTORS = [
    ("r + 6", 7),
    ("3*r + 8", 4),
    ("5*r + 38", 3),
    ("432*r^10 + 85536*r^9 + 3803796*r^8 + 82050188*r^7 + 1045887247*r^6 + 8514043782*r^5"
     " + 45438798848*r^4 + 157585300528*r^3 + 338704428144*r^2 + 402431922656*r"
     " + 195043474048", 1),
]
INEQKS_Q = "14*k^6 + 220*k^5 + 1215*k^4 + 2852*k^3 + 2947*k^2 + 1165*k + 160"
INEQKS_GAP = "16*k^2 + 8"
INEQKS_QL_DISC_CONST = -8
INEQKS_QL_BRACKET = (
    "3136589568*l^5 + 11043385174784*l^4 + 1758965584701728*l^3 + 79189061386916048*l^2"
    " + 1067453304129927340*l + 4262062225186419475"
)

XY = ["x", "y"]
ALINEQ1_G = "x^2 + 4*x*y + 4"
ALINEQ1_DX = "x^3*y - 4*x^2*y^2 + 2*x^2 - 2*x*y^3 - 9*x*y - 2*y^2 - 4"
ALINEQ1_DY = "x^4 - 4*x^3*y - 2*x^2*y^2 - 3*x^2 - 6*x*y - 4"
ALINEQ1_RES = "720*y^4 + 1296*y^2 + 576"


def _expand_factored(const, factors, vars) -> MultiPoly:
    out = MultiPoly.const(const, vars)
    for text, e in factors:
        out = out * parse_poly(text, vars) ** e
    return out


def _positivity_obligation(desc: str, cert: PositivityCert, anchor: str = "") -> Obligation:
    return Obligation(desc, "positivity", cert.status, anchor, cert.to_dict())


def _spot(desc: str, lhs: Fraction, rhs: Fraction, anchor: str = "", at=None) -> Obligation:
    """Exact strict inequality ``lhs < rhs`` at a point."""
    return Obligation(
        desc,
        "numeric-margin",
        "pass" if lhs < rhs else "fail",
        anchor,
        {"at": at or {}, "lhs": format_rational(lhs), "rhs": format_rational(rhs),
         "margin": format_rational(rhs - lhs)},
    )


def _dependency(name: str, cert: Certificate) -> Obligation:
    return Obligation(
        f"certificate {name} passes",
        "dependency",
        cert.overall,
        f"Lemma {name}",
        {"certificate": name, "overall": cert.overall},
    )


# -- the bivariate pattern ------------------------------------------------------


def certify_bivariate_positive(
    p: MultiPoly,
    outer: str,
    inner: str,
    outer_dom: DomainSpec,
    disc_factored: tuple | None = None,
    slice_certifier: Callable[[MultiPoly], list[Obligation]] | None = None,
    name: str = "bivariate-positivity",
) -> Certificate:
    """Certify ``p > 0`` on ``outer_dom × ℝ``.

    The argument: the leading coefficient in ``inner`` stays positive, the
    discriminant in ``inner`` never vanishes on ``outer_dom`` (it is certified
    negative), so the number of real roots in ``inner`` is constant along the
    connected domain; one slice with no real root and a positive value then
    forces positivity everywhere.

    ``disc_factored = (constant, [(factor_text, exponent), ...])`` supplies a
    factored form of the discriminant, which is checked by expansion and lets
    negativity be certified factor by factor.
    """
    vars = [outer, inner]
    p = p.with_vars(vars) if set(p.used_vars()) <= set(vars) else p
    if set(p.used_vars()) - set(vars):
        raise ValueError(f"expected a polynomial in {vars}, got {p.used_vars()}")
    deg = p.degree(inner)
    if deg < 2 or deg % 2:
        raise ValueError("pattern inapplicable: inner degree must be even and positive")
    cert = Certificate(name)

    lead = p.univariate_coeffs(inner)[-1].with_vars([outer])
    if lead.is_constant():
        lc = lead.constant_value()
        cert.add(Obligation(
            f"leading coefficient in {inner} is a positive constant",
            "positivity", "pass" if lc > 0 else "fail", "",
            {"leading_coefficient": format_rational(lc)},
        ))
    else:
        cert.add(_positivity_obligation(
            f"leading coefficient in {inner} positive on {outer_dom}",
            certify_positive(lead, outer, outer_dom),
        ))

    disc = discriminant(p, inner).value.with_vars([outer])
    neg_disc = -disc
    if disc_factored is not None:
        const, factors = disc_factored
        claimed = _expand_factored(const, factors, [outer])
        cert.add(check_identity(disc, claimed, f"disc_{inner} equals the factored display",
                                "disc_%s = %s * %s" % (inner, const, " * ".join(f"({f})^{e}" for f, e in factors))))
        prod = certify_product_positive(
            -Fraction(const), [(parse_poly(f, [outer]), e) for f, e in factors], outer, outer_dom
        )
        cert.add(_positivity_obligation(f"-disc_{inner} > 0 on {outer_dom} factor by factor", prod))
    else:
        cert.add(_positivity_obligation(
            f"-disc_{inner} > 0 on {outer_dom}", certify_positive(neg_disc, outer, outer_dom)
        ))

    a = outer_dom.sample_point()
    slice_poly = p.partial_eval({outer: a}).with_vars([inner])
    if slice_certifier is not None:
        extra = slice_certifier(slice_poly)
        cert.extend(extra)
        cert.add(Obligation(
            f"slice {outer}={format_rational(a)} positive on R",
            "positivity", "pass" if all(o.passed for o in extra) else "fail", "",
            {"slice": str(slice_poly), "via": [o.desc for o in extra]},
        ))
    else:
        cert.add(_positivity_obligation(
            f"slice {outer}={format_rational(a)} positive on R",
            certify_positive(slice_poly, inner, DomainSpec.whole_line()),
        ))
    return cert


# -- lemma: sextic in (sigma, tau) ---------------------------------------------------


def ineqef_polynomial() -> MultiPoly:
    lhs = parse_poly(INEQEF_LHS, SIG_TAU)
    a = parse_poly(INEQEF_ABS_PART, SIG_TAU)
    t3 = parse_poly("2*tau^3", SIG_TAU)
    return (lhs - (a + t3) ** 2) / 2


def certify_lemma_ineqef() -> Certificate:
    lhs = parse_poly(INEQEF_LHS, SIG_TAU)
    a = parse_poly(INEQEF_ABS_PART, SIG_TAU)
    t3 = parse_poly("2*tau^3", SIG_TAU)
    p = ineqef_polynomial()
    cert = Certificate("ineqef")
    cert.add(check_identity(2 * p, lhs - (a + t3) ** 2,
                            "same-sign case: LHS - RHS = 2 P(sigma, tau)",
                            "2 P = LHS - (sigma^3 - 2 sigma tau^2 + 9 sigma + 2 tau^3)^2"))
    p_neg = p.substitute("tau", parse_poly("-tau", SIG_TAU)).with_vars(SIG_TAU)
    cert.add(check_identity(2 * p_neg, lhs - (a - t3) ** 2,
                            "opposite-sign case: LHS - RHS = 2 P(sigma, -tau)",
                            "2 P(sigma, -tau) = LHS - (sigma^3 - 2 sigma tau^2 + 9 sigma - 2 tau^3)^2"))
    disc = discriminant(p, "tau").value
    claimed = _expand_factored(INEQEF_DISC_CONST, INEQEF_DISC_FACTORS, ["sigma"])
    ob = check_identity(disc, claimed, "disc_tau P equals the factored display",
                        "disc_tau P = -102036672 (sigma^2 + 6)^3 (12 sigma^12 + ... + 1679616)")
    ob.kind = "discriminant-match"
    ob.data["degree"] = disc.degree("sigma") if not disc.is_zero() else -1
    cert.add(ob)
    biv = certify_bivariate_positive(
        p, "sigma", "tau", DomainSpec.whole_line(),
        disc_factored=(INEQEF_DISC_CONST, INEQEF_DISC_FACTORS), name="ineqef/bivariate",
    )
    for o in biv.obligations:
        o.desc = "bivariate: " + o.desc
    cert.extend(biv.obligations)
    slice0 = p.partial_eval({"sigma": 0}).with_vars(["tau"])
    cert.add(check_identity(slice0, parse_poly(INEQEF_SLICE, ["tau"]),
                            "slice P(0, tau)", "P(0, tau) = tau^6 + 18 tau^4 - 243 tau^2 + 648"))
    cert.add(_positivity_obligation(
        "even part u^3 + 18u^2 - 243u + 648 > 0 for u = tau^2 >= 0",
        certify_positive(parse_poly("u^3 + 18*u^2 - 243*u + 648", ["u"]), "u", DomainSpec.ray_geq(0)),
        "P(0, tau) >= 648/(13 sqrt(13) + 47)",
    ))
    val = p.evaluate({"sigma": 1, "tau": 1})
    cert.add(_spot("spot check P(1, 1) > 0", Fraction(0), val, at={"sigma": "1", "tau": "1"}))
    cert.assumptions.append(
        "sign-case reduction: LHS - RHS equals 2P(sigma, tau) or 2P(sigma, -tau); since P > 0 on "
        "all of R^2 both cases follow (boundary cases where a side vanishes are covered by either identity)"
    )
    return cert


# -- lemma: symmetric inequality in (x, y, z) -----------------------------------------


def certify_lemma_alineq2(ineqef: Certificate | None = None) -> Certificate:
    cert = Certificate("alineq2")
    p = parse_poly(ALINEQ2_P, XYZ)
    # adjacent transpositions generate all permutations of (x, y, z)
    for a, b in (("x", "y"), ("y", "z")):
        swapped = p.rename({a: b, b: a}).with_vars(XYZ)
        cert.add(check_identity(swapped, p, f"P is invariant under {a} <-> {b}", "P symmetric"))
    elem = to_elementary(p, XYZ)
    display = parse_poly(ALINEQ2_SIGMA_FORM, SIGMAS)
    ob = check_identity(elem.poly, display, "P in elementary symmetric polynomials",
                        "P = -9 sigma3^2 + (-2 sigma1^3 + 10 sigma2 sigma1 + 6 sigma1) sigma3 - 2 sigma2^3 + ...")
    ob.data["term_count"] = len(display)
    cert.add(ob)
    cert.add(check_identity(elem.back_substitute(), p, "elementary form back-substitutes to P"))

    tau_form = tau_substitute(elem)
    sextic = parse_poly(ALINEQ2_SEXTIC, TAU_VARS)
    square = parse_poly(ALINEQ2_SQUARE, TAU_VARS)
    cert.add(check_identity(81 * tau_form.poly, sextic - square,
                            "81 P = -(-5 sigma1 tau^2 + 2 sigma1^3 + 9 sigma1 - 27 sigma3)^2 + sextic",
                            "P = 1/81 [-(...)^2 + 6 tau^6 + ...]"))

    cubic_vars = ["lambda"] + SIGMAS
    cdisc = discriminant(parse_poly(CUBIC, cubic_vars), "lambda").value
    ob = check_identity(cdisc, parse_poly(CUBIC_DISC, SIGMAS), "disc_lambda of the cubic with roots x, y, z",
                        "disc = sigma1^2 sigma2^2 - 4 sigma2^3 - 4 sigma1^3 sigma3 - 27 sigma3^2 + 18 sigma1 sigma2 sigma3")
    ob.kind = "discriminant-match"
    cert.add(ob)
    cert.add(check_identity(tau_substitute(cdisc.with_vars(SIGMAS)).poly, parse_poly(CUBIC_DISC_TAU, TAU_VARS),
                            "cubic discriminant in tau-form",
                            "disc = 4/27 tau^6 - 1/27 (3 sigma1 tau^2 - sigma1^3 + 27 sigma3)^2"))
    cert.add(check_identity(
        parse_poly("(sigma1^3 - 2*sigma1*tau^2 + 9*sigma1) - (3*sigma1*tau^2 - sigma1^3 + 27*sigma3)", TAU_VARS),
        parse_poly("2*sigma1^3 - 5*sigma1*tau^2 + 9*sigma1 - 27*sigma3", TAU_VARS),
        "difference of the two bracketed terms closes the chain", "[...]^2 - (...)^2 = 0",
    ))
    ineqef_lhs = parse_poly(INEQEF_LHS, SIG_TAU).rename({"sigma": "sigma1"})
    cert.add(check_identity(sextic, ineqef_lhs, "the sextic is the left side of lemma ineqef at sigma = sigma1"))
    if ineqef is None:
        ineqef = certify_lemma_ineqef()
    cert.add(_dependency("ineqef", ineqef))

    point = {"x": 1, "y": 0, "z": -1}
    lhs = parse_poly(ALINEQ2_LHS, XYZ).evaluate(point)
    rhs = parse_poly(ALINEQ2_RHS, XYZ).evaluate(point)
    cert.add(_spot("spot check at (x, y, z) = (1, 0, -1)", lhs, rhs, at={k: str(v) for k, v in point.items()}))
    cert.assumptions.append("x, y, z real, so the cubic has three real roots and its discriminant is >= 0")
    return cert


# -- lemma: positivity for s >= 6 ------------------------------------------------------


def _q_slice_obligations(slice_poly: MultiPoly) -> list[Obligation]:
    q = parse_poly(INEQKS_Q, ["k"])
    gap = parse_poly(INEQKS_GAP, ["k"])
    obs = [check_identity(slice_poly - 32 * q, gap, "P(0, k) - 32 Q(k) = 16k^2 + 8",
                          "P(0, k) = 32 [14 k^6 + ... + (2947 + 1/2) k^2 + 1165 k + 160 + 1/4]")]
    n = count_real_roots(q, "k", DomainSpec.whole_line())
    obs.append(Obligation("Q has no real roots (Sturm)", "root-count", "pass" if n == 0 else "fail", "",
                          {"roots": n, "chain_length": len(sturm_sequence(q, "k").polys)}))
    obs.append(_positivity_obligation("Q > 0 on R", certify_positive(q, "k", DomainSpec.whole_line()),
                                      "inf Q > 0"))
    obs.append(_positivity_obligation("16k^2 + 8 > 0 on R", certify_positive(gap, "k", DomainSpec.whole_line())))
    return obs


def ineqks_polynomial() -> MultiPoly:
    return parse_poly(INEQKS_P, RK)


def certify_lemma_ineqks() -> Certificate:
    cert = Certificate("ineqks")
    orig = parse_poly(INEQKS_ORIG, SK)
    p = ineqks_polynomial()
    shifted = orig.substitute("s", parse_poly("r + 6", ["r"])).with_vars(RK)
    cert.add(check_identity(shifted, p, "s = r + 6 gives P(r, k)",
                            "16 (3 r + 8) (k - 1)^2 [k^2 + k (r + 6) + 1]^2 + 5 [4 k^2 + 4 k (r + 6) + r + 10]^3"))
    disc = discriminant(p, "k").value
    claimed = _expand_factored(INEQKS_DISC_CONST, INEQKS_DISC_FACTORS, ["r"])
    ob = check_identity(disc, claimed, "disc_k P(r, k) equals the factored display",
                        "disc_k P = -8388608000 (r + 6)^7 (3 r + 8)^4 (5 r + 38)^3 (432 r^10 + ... + 195043474048)")
    ob.kind = "discriminant-match"
    cert.add(ob)
    biv = certify_bivariate_positive(
        p, "r", "k", DomainSpec.ray_geq(0),
        disc_factored=(INEQKS_DISC_CONST, INEQKS_DISC_FACTORS),
        slice_certifier=_q_slice_obligations, name="ineqks/bivariate",
    )
    for o in biv.obligations:
        o.desc = "bivariate: " + o.desc
    cert.extend(biv.obligations)

    kl = ["l", "k"]
    q_plus_l = parse_poly(INEQKS_Q, kl) + parse_poly("l", kl)
    qdisc = discriminant(q_plus_l, "k").value
    bracket = parse_poly(INEQKS_QL_BRACKET, ["l"])
    ob = check_identity(qdisc, INEQKS_QL_DISC_CONST * bracket, "disc_k(Q(k) + l) equals the quintic display",
                        "disc_k(Q + l) = -8 (3136589568 l^5 + ... + 4262062225186419475)")
    ob.kind = "discriminant-match"
    ob.data["bracket_constant_term"] = str(bracket.evaluate({"l": 0}))
    cert.add(ob)
    cert.add(_positivity_obligation("quintic bracket > 0 for l >= 0, so disc_k(Q + l) < 0",
                                    certify_positive(bracket, "l", DomainSpec.ray_geq(0))))
    val = p.evaluate({"r": 0, "k": 1})
    cert.add(_spot("spot check P(0, 1) > 0", Fraction(0), val, at={"r": "0", "k": "1"}))
    return cert


# -- lemma: the disc inequality in (x, y) ---------------------------------------------------


class _RatFn:
    """num/den over a shared variable table; only what the quotient rule needs."""

    def __init__(self, num: MultiPoly, den: MultiPoly):
        self.num, self.den = num, den

    def diff(self, v: str) -> "_RatFn":
        return _RatFn(self.num.derivative(v) * self.den - self.num * self.den.derivative(v), self.den * self.den)

    def __mul__(self, p: MultiPoly) -> "_RatFn":
        return _RatFn(self.num * p, self.den)

    def __add__(self, p: MultiPoly) -> "_RatFn":
        return _RatFn(self.num + p * self.den, self.den)

    def cleared(self) -> MultiPoly:
        return self.num


def certify_lemma_alineq1(ineqks: Certificate | None = None) -> Certificate:
    cert = Certificate("alineq1")
    x, y = (MultiPoly.var(v, XY) for v in XY)
    g = parse_poly(ALINEQ1_G, XY)
    dx_num = parse_poly(ALINEQ1_DX, XY)
    dy_num = parse_poly(ALINEQ1_DY, XY)
    den = (x - y) ** 2 * (1 + x * y) ** 2
    phi = _RatFn(-(g**3), den)
    cube = (x - y) ** 3 * (x * y + 1) ** 3
    # phi_x (x-y)^3 (xy+1)^3 + 2 g^2 A = 0  and  phi_y (x-y)^3 (xy+1)^3 - 2 g^2 B = 0
    lhs_x = phi.diff("x") * cube + 2 * g**2 * dx_num
    lhs_y = phi.diff("y") * cube + (-2) * g**2 * dy_num
    cert.add(check_identity(lhs_x.cleared(), MultiPoly.const(0, XY),
                            "d(phi)/dx numerator identity (quotient rule, cleared)",
                            "d phi/dx = -2 (x^2 + 4xy + 4)^2 (x^3 y - ...) / ((x - y)^3 (xy + 1)^3)"))
    cert.add(check_identity(lhs_y.cleared(), MultiPoly.const(0, XY),
                            "d(phi)/dy numerator identity (quotient rule, cleared)",
                            "d phi/dy = 2 (x^2 + 4xy + 4)^2 (x^4 - ...) / ((x - y)^3 (xy + 1)^3)"))

    res = resultant(dx_num, dy_num, "x")
    ob = check_identity(res.value, parse_poly(ALINEQ1_RES, ["y"]), "res_x of the critical-point numerators",
                        "res_x(...) = 720 y^4 + 1296 y^2 + 576")
    ob.kind = "resultant-match"
    ob.data["degrees"] = list(res.degrees)
    cert.add(ob)
    n = count_real_roots(res.value.with_vars(["y"]), "y", DomainSpec.whole_line())
    cert.add(Obligation("resultant has no real roots, so no interior critical points", "root-count",
                        "pass" if n == 0 else "fail", "the resultant can not be zero for real y", {"roots": n}))
    cert.add(_positivity_obligation("resultant > 0 on R",
                                    certify_positive(res.value.with_vars(["y"]), "y", DomainSpec.whole_line())))

    # boundary: y = k x, then x^2 = u with u (1 + k^2) = s
    kxu = ["k", "x", "u", "s"]
    yk = parse_poly("k*x", kxu)
    num_b = (-(g**3)).substitute("y", yk).with_vars(kxu)
    den_b = den.substitute("y", yk).with_vars(kxu)
    from pinchcert.symmetric import substitute_even

    u = parse_poly("u", kxu)
    s_of_u = parse_poly("u*(1 + k^2)", kxu)
    num_u = substitute_even(num_b, "x", u).with_vars(kxu).substitute("s", s_of_u)
    den_u = substitute_even(den_b, "x", u).with_vars(kxu).substitute("s", s_of_u)
    claim_num = parse_poly("-(4*k^2 + 4*k*s + s + 4)^3", kxu).substitute("s", s_of_u)
    claim_den = parse_poly("s*(k - 1)^2*(k^2 + k*s + 1)^2", kxu).substitute("s", s_of_u)
    cert.add(check_identity(num_u * claim_den, claim_num * den_u,
                            "boundary reduction y = kx, x^2 = s/(1 + k^2) (cross-multiplied)",
                            "phi = -(4k^2 + 4ks + s + 4)^3 / (s (k - 1)^2 (k^2 + ks + 1)^2)"))

    ks = ["k", "s"]
    e = parse_poly("(k - 1)^2*(k^2 + k*s + 1)^2", ks)
    gg = parse_poly("4*k^2 + 4*k*s + s + 4", ks)
    s = parse_poly("s", ks)
    phi_b = _RatFn(-(gg**3), s * e)
    bound = _RatFn(parse_poly("16*(3*s - 10)", ks), 5 * s)  # 16/5 (3 - 10/s)
    scale = 5 * s * e
    first = (phi_b.num * scale).exact_div(phi_b.den) - (bound.num * scale).exact_div(bound.den)
    ineqks_expr = parse_poly(INEQKS_ORIG, ks)
    cert.add(check_identity(first + ineqks_expr, MultiPoly.const(0, ks),
                            "5 s (k-1)^2 (k^2+ks+1)^2 [phi - 16/5 (3 - 10/s)] + (lemma ineqks expression) = 0",
                            "phi - 16/5 (3 - 10/s) = -1/(5 s (k - 1)^2 (k^2 + ks + 1)^2) [...]"))
    if ineqks is None:
        ineqks = certify_lemma_ineqks()
    cert.add(_dependency("ineqks", ineqks))

    xv, yv, sv = Fraction(1), Fraction(2), Fraction(6)
    lhs = -((xv**2 + 4 * xv * yv + 4) ** 3)
    rhs = Fraction(16, 5) * (3 - 10 / sv) * (xv - yv) ** 2 * (1 + xv * yv) ** 2
    cert.add(_spot("spot check at (x, y) = (1, 2), s = 6", lhs, rhs, at={"x": "1", "y": "2", "s": "6"}))
    cert.assumptions.extend([
        "excluded curve (x - y)(1 + xy) = 0: there x^2 + 4xy + 4 > 0, so the left side is negative "
        "and the right side is 0",
        "excluded curve x^2 + 4xy + 4 = 0: the left side is 0 and the right side is positive since s >= 6",
        "no interior critical point, so the maximum of phi on the disc lies on the boundary circle",
        "boundary point with x = 0: the left side is -64 and the right side is positive",
    ])
    return cert


# -- runner ------------------------------------------------------------------------------------

LEMMAS = {
    "ineqef": certify_lemma_ineqef,
    "alineq2": certify_lemma_alineq2,
    "ineqks": certify_lemma_ineqks,
    "alineq1": certify_lemma_alineq1,
}
DEPENDENCIES = {"ineqef": [], "alineq2": ["ineqef"], "ineqks": [], "alineq1": ["ineqks"]}


def lemma_order(names: Sequence[str] | None = None) -> list[str]:
    """Dependency order; raises graphlib.CycleError if the graph is cyclic."""
    graph = {n: DEPENDENCIES[n] for n in (names or LEMMAS)}
    for n in list(graph):
        for d in DEPENDENCIES[n]:
            graph.setdefault(d, DEPENDENCIES[d])
    order = list(TopologicalSorter(graph).static_order())
    return _stable(order, ["ineqef", "alineq2", "ineqks", "alineq1"])


def _stable(order: list[str], canonical: list[str]) -> list[str]:
    done: list[str] = []
    pending = sorted(order, key=canonical.index)
    while pending:
        for n in pending:
            if all(d in done for d in DEPENDENCIES[n]):
                done.append(n)
                pending.remove(n)
                break
    return done


def certify_lemma(name: str, cache: dict | None = None) -> Certificate:
    cache = {} if cache is None else cache
    for n in lemma_order([name]):
        if n in cache:
            continue
        deps = {d: cache[d] for d in DEPENDENCIES[n]}
        if n == "alineq2":
            cache[n] = certify_lemma_alineq2(deps["ineqef"])
        elif n == "alineq1":
            cache[n] = certify_lemma_alineq1(deps["ineqks"])
        else:
            cache[n] = LEMMAS[n]()
    return cache[name]


def certify_all() -> list[Certificate]:
    cache: dict = {}
    return [certify_lemma(n, cache) for n in lemma_order()]
