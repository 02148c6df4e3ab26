from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinchcert.oracle import (
    SpectralSample,
    c_constant,
    certify_c_exceeds_two,
    check_spectrum,
    f_direct,
    f_power_sums,
    sample_spectra,
)


def test_clifford_boundary_spectrum():
    lam = [1, 1, 1, -1, -1, -1]
    chk = check_spectrum(lam, 18)
    assert chk is not None
    assert chk.S == 6 and chk.f_identity
    assert f_direct(lam) == 0 == f_power_sums(lam)
    assert not chk.violated


def test_zero_spectrum_rejected():
    assert check_spectrum([0] * 6, 18) is None


def test_sample_requires_zero_trace():
    with pytest.raises(ValueError):
        SpectralSample((1, 1, 1, 0, 0, 0))


def test_invalid_parameters():
    with pytest.raises(ValueError):
        sample_spectra(5, 18, 10, 0)
    with pytest.raises(ValueError):
        sample_spectra(6, 0, 10, 0)
    with pytest.raises(ValueError):
        sample_spectra(6, 18, 0, 0)


def test_c_values():
    assert c_constant(6, 18) == Fraction(24, 5) - Fraction(288, 19 * 6)
    for n in (6, 7, 100):
        assert c_constant(n, 1) == Fraction(24, 5) - Fraction(8, n)


def test_c_exceeds_two_obligation():
    ob = certify_c_exceeds_two()
    assert ob.passed
    assert ob.data["numerator"] == "14*a*b + 14*a + 84*b + 4"


def test_small_run_is_deterministic():
    a = sample_spectra(6, 18, 300, seed=7)
    b = sample_spectra(6, 18, 300, seed=7)
    assert a.to_dict() == b.to_dict()
    assert a.trials == 300 and a.violations == 0 and a.f_mismatches == 0
    assert a.config["seed"] == 7
    assert a.min_margin is not None and a.min_margin >= 0
    c = sample_spectra(6, 18, 300, seed=8)
    assert c.to_dict() != a.to_dict()


def test_every_sample_kind_appears():
    rep = sample_spectra(8, 18, 400, seed=3)
    assert set(rep.strategies) == {"uniform", "clifford", "sparse", "pair"}


@st.composite
def spectra(draw):
    n = draw(st.integers(6, 10))
    v = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    mean = Fraction(sum(v), n)
    return [Fraction(x) - mean for x in v]


@settings(max_examples=200, deadline=None)
@given(spectra())
def test_f_identity_holds_for_any_traceless_spectrum(lam):
    assert f_direct(lam) == f_power_sums(lam)


@settings(max_examples=200, deadline=None)
@given(spectra(), st.integers(1, 40), st.floats(0.0, 1.0))
def test_inequalities_hold_inside_the_pinching_range(lam, eta, where):
    s = sum(x * x for x in lam)
    n = len(lam)
    if s == 0:
        return
    lo, hi = n, n * (1 + Fraction(1, eta))
    target = float(lo) + where * float(hi - lo)
    t = Fraction((target / float(s)) ** 0.5).limit_denominator(1000)
    scaled = [x * t for x in lam]
    chk = check_spectrum(scaled, eta)
    if chk is None:
        assert not lo <= s * t * t <= hi
        return
    assert chk.f_identity and not chk.violated
