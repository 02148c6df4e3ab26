"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from pinchcert.multipoly import MultiPoly

small_rationals = st.builds(
    Fraction,
    st.integers(-20, 20),
    st.integers(1, 6),
)

big_rationals = st.builds(
    Fraction,
    st.integers(-(10**64), 10**64),
    st.integers(1, 10**64),
)


@st.composite
def sparse_polys(draw, vars=("x", "y", "z", "w"), max_deg=6, max_terms=6):
    """Random sparse polynomial over ``vars`` with total degree <= max_deg."""
    n = len(vars)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n))
        while sum(exps) > max_deg:
            i = exps.index(max(exps))
            exps[i] -= 1
        terms[tuple(exps)] = draw(small_rationals)
    return MultiPoly(vars, terms)


def points(vars=("x", "y", "z", "w")):
    return st.fixed_dictionaries({v: small_rationals for v in vars})


# one (criterion, ok, seconds) entry per acceptance criterion, printed at the end of the run
ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, secs in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s)")
