import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinchcert.elimination import discriminant
from pinchcert.lemmas import (
    ALINEQ2_P,
    ALINEQ2_SEXTIC,
    ALINEQ2_SIGMA_FORM,
    ALINEQ2_SQUARE,
    CUBIC,
    CUBIC_DISC_TAU,
    SIGMAS,
    TAU_VARS,
    XYZ,
)
from pinchcert.multipoly import MultiPoly, parse_poly
from pinchcert.symmetric import (
    ElemSymExpr,
    NotSymmetric,
    TauForm,
    is_symmetric,
    power_sum_in_elementary,
    substitute_even,
    tau_substitute,
    to_elementary,
)

from conftest import small_rationals


def X(text):
    return parse_poly(text, XYZ)


def S(text):
    return parse_poly(text, SIGMAS)


def test_is_symmetric_examples():
    assert is_symmetric(X("x^2 + y^2 + z^2"))
    assert not is_symmetric(parse_poly("x - y", ["x", "y"]))
    assert is_symmetric(X(ALINEQ2_P))


def test_to_elementary_examples():
    assert to_elementary(X("x^2 + y^2 + z^2")).poly == S("sigma1^2 - 2*sigma2")
    assert to_elementary(X("x^3 + y^3 + z^3")).poly == S("sigma1^3 - 3*sigma1*sigma2 + 3*sigma3")
    e = to_elementary(X(ALINEQ2_P))
    assert e.poly == S(ALINEQ2_SIGMA_FORM)
    assert e.back_substitute() == X(ALINEQ2_P)
    with pytest.raises(NotSymmetric):
        to_elementary(X("x - y"))


def test_power_sums():
    assert power_sum_in_elementary(1, 3).poly == S("sigma1")
    assert power_sum_in_elementary(2, 3).poly == S("sigma1^2 - 2*sigma2")
    f4 = power_sum_in_elementary(4, 3).poly
    assert f4 == S("sigma1^4 - 4*sigma1^2*sigma2 + 2*sigma2^2 + 4*sigma1*sigma3")
    with pytest.raises(ValueError):
        power_sum_in_elementary(0, 3)


@pytest.mark.parametrize("m", range(1, 9))
def test_newton_consistency(m):
    e = power_sum_in_elementary(m, 3)
    assert e.back_substitute() == X(f"x^{m} + y^{m} + z^{m}")


def test_newton_other_arity():
    e = power_sum_in_elementary(3, 4)
    vars = ["x1", "x2", "x3", "x4"]
    assert e.back_substitute() == parse_poly("x1^3 + x2^3 + x3^3 + x4^3", vars)


def test_tau_substitute_examples():
    t = tau_substitute(S("sigma1^2 - 3*sigma2"))
    assert t.poly == parse_poly("tau^2", ["tau"])
    t = tau_substitute(parse_poly("sigma2", ["sigma2"]))
    assert t.poly == parse_poly("(sigma1^2 - tau^2)/3", ["sigma1", "tau"])


def test_81p_tau_identity():
    e = to_elementary(X(ALINEQ2_P))
    t = tau_substitute(e)
    lhs = 81 * t.poly + parse_poly(ALINEQ2_SQUARE, TAU_VARS)
    assert lhs == parse_poly(ALINEQ2_SEXTIC, TAU_VARS)


def test_cubic_discriminant_identity():
    lam = ["lambda"] + SIGMAS
    d = discriminant(parse_poly(CUBIC, lam), "lambda").value
    assert tau_substitute(d).poly == parse_poly(CUBIC_DISC_TAU, TAU_VARS)


def test_tau_form_parity_enforced():
    with pytest.raises(ValueError):
        TauForm(parse_poly("tau^3", ["tau"]))
    with pytest.raises(ValueError):
        substitute_even(parse_poly("tau", ["tau"]), "tau", parse_poly("1", ["tau"]))


@st.composite
def symmetric_polys(draw):
    # combinations of products of elementary polynomials, expanded in x, y, z
    out = MultiPoly.const(0, XYZ)
    es = [X("x + y + z"), X("x*y + y*z + z*x"), X("x*y*z")]
    for _ in range(draw(st.integers(1, 4))):
        term = MultiPoly.const(draw(small_rationals), XYZ)
        for e in es:
            term = term * e ** draw(st.integers(0, 2))
        out = out + term
    return out


@settings(max_examples=100, deadline=None)
@given(symmetric_polys())
def test_round_trip_law(p):
    e = to_elementary(p)
    assert isinstance(e, ElemSymExpr)
    assert e.back_substitute() == p
    t = tau_substitute(e)
    assert t.to_elementary() == e.poly
