"""Exact rational scalars and the text grammar used for them in model files.

Every probability in this package is a ``fractions.Fraction``: arbitrary
precision, always reduced, denominator always positive.  ``Rat`` is an alias
so signatures read like the domain they model.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

# Strict grammar: an optional sign, digits, optionally "/digits".  No floats,
# no decimals, no whitespace.
_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a bare integer written in base 10.

    Rejects anything else: decimal points, exponents, embedded whitespace,
    and zero denominators.
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r} (expected p/q or an integer)")
    numerator = int(match.group(1))
    denominator_text = match.group(2)
    if denominator_text is None:
        return Fraction(numerator)
    denominator = int(denominator_text)
    if denominator == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render reduced ``p/q``; integral values print without the ``/1``."""
    return str(value)
