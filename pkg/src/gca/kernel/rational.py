"""Exact rationals.

``fractions.Fraction`` is the coefficient type throughout the package; this
module only adds parsing and the string wire format ("p/q", or "p" when q=1).
"""

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return to_rational(s)
