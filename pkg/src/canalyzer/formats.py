"""Rendering helpers shared by CSV writers, the service and the CLI.

Decimal output is fixed at 6 significant digits with round-half-even; exact
rationals always travel alongside their decimal rendering as "num/den".
"""
from __future__ import annotations

import decimal
from fractions import Fraction
from typing import Union

_CTX = decimal.Context(prec=6, rounding=decimal.ROUND_HALF_EVEN)

Number = Union[Fraction, int, float]


def render_decimal(value: Number) -> str:
    if isinstance(value, Fraction):
        d = _CTX.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    elif isinstance(value, int):
        d = _CTX.plus(decimal.Decimal(value))
    else:
        d = _CTX.plus(decimal.Decimal(repr(value)))
    return format(d.normalize(_CTX), "f")


def render_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"
