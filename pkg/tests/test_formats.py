from fractions import Fraction

from canalyzer.formats import render_decimal, render_fraction


def test_render_fraction():
    assert render_fraction(Fraction(6, 24)) == "1/4"
    assert render_fraction(Fraction(0)) == "0/1"


def test_render_decimal_six_significant_digits():
    assert render_decimal(Fraction(1, 3)) == "0.333333"
    assert render_decimal(Fraction(2, 3)) == "0.666667"
    # Trailing zeros are normalized away after rounding to 6 digits.
    assert render_decimal(Fraction(179, 420)) == "0.42619"
    assert render_decimal(Fraction(47, 140)) == "0.335714"


def test_render_decimal_round_half_even():
    # 0.06640625 rounds to 6 digits as 0.0664062 (ties to even).
    assert render_decimal(Fraction(17, 256)) == "0.0664062"


def test_render_decimal_ints_and_floats():
    assert render_decimal(1) == "1"
    assert render_decimal(Fraction(1, 2)) == "0.5"
    assert render_decimal(0.25) == "0.25"
