"""Rational helpers and the exact string encoding used by every report."""
from __future__ import annotations

from fractions import Fraction
from typing import Any


def Q(x: Any) -> Fraction:
    """Coerce ints, strings such as ``"-7/12"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def qstr(x: Any) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when integral)."""
    return str(Q(x))


def reduce_mod(x: Fraction, m: int) -> Fraction:
    """Representative of x in [0, m)."""
    x = Q(x)
    k = (x / m).numerator // (x / m).denominator
    return x - k * m


def mod1(x: Any) -> Fraction:
    return reduce_mod(x, 1)


def mod2(x: Any) -> Fraction:
    return reduce_mod(x, 2)


def is_integer(x: Any) -> bool:
    return Q(x).denominator == 1
