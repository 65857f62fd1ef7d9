"""Exact rational scalars.

Every coefficient, weight and eigenvalue in this package is a
``fractions.Fraction``: arbitrary-precision, always in lowest terms with a
positive denominator, and with exact arithmetic.  Nothing in the package
ever rounds.  This module only adds the string forms used on the command
line and in JSON reports: ``"num/den"`` or ``"num"``, nothing else (no
decimals, which would smuggle in inexactness).
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))$|^([+-]?\d+)$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` into a Fraction.

    Raises ValueError on anything else, including decimal notation and a
    zero denominator.
    """
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    if m.group(3) is not None:
        return Fraction(int(m.group(3)))
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"num"`` or ``"num/den"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
