"""Dual-mode scalars: exact rationals (``Fraction``) or IEEE-754 doubles.

A value is *exact* when it is an ``int`` or a ``Fraction``; anything else is
treated as a float.  Geometry routines pick their arithmetic from the inputs,
so the same function serves both modes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import numpy as np

Scalar = Union[Fraction, float]

#: Default relative tolerance for float-mode predicates.
DEFAULT_TOL = 1e-9

EXACT = "exact"
FLOAT = "float"


def is_exact_value(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def is_exact(values: Iterable) -> bool:
    """True when every value is an int or a Fraction."""
    return all(is_exact_value(v) for v in values)


def coerce(x, exact: bool) -> Scalar:
    if exact:
        if not is_exact_value(x):
            raise TypeError(f"{x!r} is not an exact rational")
        return Fraction(x)
    return float(x)


def exact_sqrt(q) -> Fraction | None:
    """Square root of a nonnegative rational if it is itself rational."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def sqrt(x) -> Scalar:
    """Exact root for perfect rational squares, float root otherwise."""
    if is_exact_value(x):
        r = exact_sqrt(x)
        if r is not None:
            return r
        return math.sqrt(Fraction(x))
    if x < 0:
        if x > -1e-300:
            return 0.0
        raise ValueError(f"square root of negative value {x!r}")
    return math.sqrt(x)


def close(a, b, tol: float = DEFAULT_TOL, scale: float = 0.0) -> bool:
    """Compare two scalars: exactly in exact mode, with relative tolerance otherwise.

    The float comparison is ``|a - b| <= tol * max(|a|, |b|, scale)``.
    """
    if is_exact_value(a) and is_exact_value(b):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(abs(a), abs(b), scale)


def parse_scalar(value, mode: str = EXACT) -> Scalar:
    """Parse ``"p/q"``, decimal strings, ints or floats.

    In exact mode decimal strings such as ``"0.1"`` become the rational 1/10;
    a float *object* is converted losslessly from its binary value.
    """
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "+inf", "infinity"):
            return math.inf
        if mode == EXACT:
            return Fraction(text)
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value) if mode == EXACT else float(value)
    if isinstance(value, (float, np.floating)):
        if mode == EXACT and math.isfinite(value):
            return Fraction(float(value))
        return float(value)
    raise TypeError(f"cannot parse scalar from {value!r}")


def format_scalar(x) -> str | float:
    """Exact values serialize as ``"p/q"`` strings, floats as JSON numbers."""
    if is_exact_value(x):
        q = Fraction(x)
        return f"{q.numerator}/{q.denominator}"
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def to_float(x) -> float:
    return float(x)
