"""Rational points on C_{m^2} and on the Pell conic x^2 - 2xy - y^2 = 1.

Lines y = t(x - m) through the base point (m, 0) meet
x^2 - m^2 xy + y^2 = m^2 in a second point::

    x = m(t^2 - 1) / (t^2 - m^2 t + 1)
    y = m(m^2 t^2 - 2t) / (t^2 - m^2 t + 1)

This is a bijection between P^1(Q) and the rational points of the conic.
The tangent slope t = 2/m^2 returns the base point itself, and the vertical
line (t = INFINITY) returns (m, m^3).
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DegenerateDenominator, InputError, PointNotOnConic


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

SlopeParam = Union[Fraction, _Infinity]


class RatPoint(NamedTuple):
    x: Fraction
    y: Fraction


def rat_point(x, y) -> RatPoint:
    return RatPoint(Fraction(x), Fraction(y))


def parse_slope(text: str) -> SlopeParam:
    """Parse ``"3/4"``, ``"-2"`` or ``"inf"``."""
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    return Fraction(text)


def on_square_conic(m: int, P) -> bool:
    x, y = Fraction(P[0]), Fraction(P[1])
    return x * x - m * m * x * y + y * y == m * m


def on_pell_vieta_conic(P) -> bool:
    x, y = Fraction(P[0]), Fraction(P[1])
    return x * x - 2 * x * y - y * y == 1


def point_from_t(m: int, t: SlopeParam) -> RatPoint:
    if m < 1:
        raise InputError("m must be positive")
    if t is INFINITY:
        return rat_point(m, m**3)
    t = Fraction(t)
    den = t * t - m * m * t + 1
    if den == 0:
        raise DegenerateDenominator(f"t^2 - m^2 t + 1 vanishes at t={t}")
    P = RatPoint(m * (t * t - 1) / den, m * (m * m * t * t - 2 * t) / den)
    assert on_square_conic(m, P)
    return P


def t_from_point(m: int, P) -> SlopeParam:
    """Inverse of :func:`point_from_t`."""
    x, y = Fraction(P[0]), Fraction(P[1])
    if not on_square_conic(m, (x, y)):
        raise PointNotOnConic(f"({x}, {y}) is not on C_{m * m}")
    if x == m:
        # (m, 0) is reached by the tangent, (m, m^3) by the vertical line
        return Fraction(2, m * m) if y == 0 else INFINITY
    return y / (x - m)


def pell_point_from_t(t) -> RatPoint:
    """Rational parametrization of x^2 - 2xy - y^2 = 1 (t=1 gives (1, 0))."""
    t = Fraction(t)
    den = t * t + 2 * t - 1  # t^2 + 2t - 1 = 0 has no rational roots
    P = RatPoint((t * t + 1) / den, (2 * t - 2 * t * t) / den)
    assert on_pell_vieta_conic(P)
    return P
