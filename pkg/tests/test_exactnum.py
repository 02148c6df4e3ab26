from fractions import Fraction

import pytest
from hypothesis import given, settings

from pinchcert.exactnum import format_rational, parse_integer, parse_rational, rat_binop, rat_make

from conftest import big_rationals


@pytest.mark.parametrize(
    "num, den, expected",
    [("6", "4", Fraction(3, 2)), ("0", "-7", Fraction(0)), ("-13", "-2430", Fraction(13, 2430))],
)
def test_rat_make_canonicalizes(num, den, expected):
    q = rat_make(num, den)
    assert q == expected
    assert q.denominator > 0


def test_zero_is_zero_over_one():
    q = rat_make("0", "-7")
    assert (q.numerator, q.denominator) == (0, 1)
    assert format_rational(q) == "0"


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        rat_make("1", "0")
    with pytest.raises(ZeroDivisionError):
        rat_binop("div", Fraction(1), Fraction(0))


def test_binop_examples():
    assert rat_binop("add", Fraction(1, 18), Fraction(7, 18)) == Fraction(4, 9)
    assert rat_binop("mul", Fraction(49, 486), Fraction(24, 5)) == Fraction(196, 405)
    assert rat_binop("cmp", Fraction(6323, 2835), Fraction(2)) == "greater"
    assert rat_binop("cmp", Fraction(1, 2), Fraction(2, 4)) == "equal"
    assert rat_binop("cmp", Fraction(-1), Fraction(0)) == "less"
    assert rat_binop("sub", Fraction(1), Fraction(1, 3)) == Fraction(2, 3)
    with pytest.raises(ValueError):
        rat_binop("pow", Fraction(1), Fraction(1))


def test_large_constants_are_exact():
    big = parse_integer("4262062225186419475")
    assert big * 8 == 34096497801491355800
    assert parse_integer("-8388608000") == -(2**23) * 1000


@pytest.mark.parametrize("bad", ["", "1.5", "+3", "1 2", "0x10", "--1"])
def test_integer_text_is_strict(bad):
    with pytest.raises(ValueError):
        parse_integer(bad)


def test_parse_rational_forms():
    assert parse_rational("7/18") == Fraction(7, 18)
    assert parse_rational("-24") == -24
    assert parse_rational("17.93") == Fraction(1793, 100)
    assert parse_rational("-0.5") == Fraction(-1, 2)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


@given(big_rationals)
def test_print_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q
    assert parse_rational(format_rational(parse_rational(format_rational(q)))) == q


@settings(max_examples=1000)
@given(big_rationals, big_rationals, big_rationals)
def test_distributivity(a, b, c):
    lhs = rat_binop("mul", a, rat_binop("add", b, c))
    rhs = rat_binop("add", rat_binop("mul", a, b), rat_binop("mul", a, c))
    assert lhs == rhs
