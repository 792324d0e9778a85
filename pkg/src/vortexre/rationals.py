"""Exact rational coefficients.

``Rational`` is gmpy2's ``mpq`` when gmpy2 is installed and the stdlib
``fractions.Fraction`` otherwise.  Both are arbitrary precision, always
canonical (positive denominator, gcd(num, den) = 1), print as ``p/q``,
hash and compare identically, and raise ZeroDivisionError on a zero
denominator, so everything downstream is backend-agnostic.
"""

from __future__ import annotations

import os

if os.environ.get("VORTEXRE_PURE_RATIONALS"):
    from fractions import Fraction as Rational

    RATIONAL_BACKEND = "fractions"
else:
    try:
        from gmpy2 import mpq as Rational

        RATIONAL_BACKEND = "gmpy2"
    except ImportError:
        from fractions import Fraction as Rational

        RATIONAL_BACKEND = "fractions"


def rational(numerator, denominator=1):
    """Canonical rational from ints, strings like ``"5/6"``, or rationals."""
    return Rational(numerator, denominator) if denominator != 1 else Rational(numerator)


def is_integer(value) -> bool:
    """True when the rational has denominator 1."""
    return value.denominator == 1


ZERO = rational(0)
ONE = rational(1)
