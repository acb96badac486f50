"""Exact scalar type and its text form.

Every numeric quantity in this library is a :class:`fractions.Fraction`:
always in lowest terms, positive denominator, exact arithmetic.  Values
travel through JSON as strings like ``"1/6"``, ``"-2/3"`` or ``"4"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ValidationError

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def frac(value) -> Fraction:
    """Coerce an int, string or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str, path: str = "") -> Fraction:
    """Parse ``"p/q"`` or an integer string; reject zero denominators."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValidationError(path, f"malformed rational {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ValidationError(path, f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
