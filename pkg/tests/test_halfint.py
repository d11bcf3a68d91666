from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgca.halfint import HalfInt, half_range


def test_parse_and_print():
    assert HalfInt.parse("3/2").twice_value == 3
    assert HalfInt.parse(" -1/2 ").twice_value == -1
    assert str(HalfInt.parse("4/2")) == "2"
    assert str(HalfInt(-5)) == "-5/2"


@pytest.mark.parametrize("text", ["1/3", "x", "", "1/0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        HalfInt.parse(text)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_arithmetic_matches_fractions(a, b):
    x, y = HalfInt(a), HalfInt(b)
    assert (x + y).value == Fraction(a + b, 2)
    assert (x - y).value == Fraction(a - b, 2)
    assert (x < y) == (a < b)
    assert x.is_integer == (a % 2 == 0)


def test_half_range_parity():
    assert list(half_range(-4, 4, 1)) == [-3, -1, 1, 3]
    assert list(half_range(-3, 3, 0)) == [-2, 0, 2]
