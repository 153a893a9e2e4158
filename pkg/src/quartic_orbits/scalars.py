"""Scalar helpers for the two numeric modes.

Exact mode works over the rationals (``int``/``Fraction``) with no rounding;
float mode is plain IEEE double precision.  Most public operations accept a
mix and stay exact only when every input is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

#: accepted scalar types (mode is a property of the values, not a tag)
Scalar = int | Fraction | float

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
SIXTH = Fraction(1, 6)


def is_exact(x) -> bool:
    """True for rationals, False for floats."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def to_float(x) -> float:
    return float(x)


def parse_scalar(text: str, mode: str = "exact") -> Scalar:
    """Parse "p/q", integer, or decimal text into a scalar of the given mode."""
    text = text.strip()
    if mode == "float":
        if "/" in text:
            num, den = text.split("/", 1)
            return float(num) / float(den)
        return float(text)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return value


def format_scalar(x) -> str:
    """Lossless text form: rationals as "p/q" (or "n"), floats via repr."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def exact_sqrt(x) -> Fraction | None:
    """Square root of a rational if it is rational, else None."""
    if not is_exact(x):
        return None
    x = Fraction(x)
    if x < 0:
        return None
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def rationalize(x: float, max_denominator: int = 10**8) -> Fraction:
    """Nearest small-denominator rational; callers must verify exactness."""
    return Fraction(x).limit_denominator(max_denominator)
