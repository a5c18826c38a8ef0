"""Dual numeric backend helpers.

Exact rationals (``fractions.Fraction``) are the default wherever every
quantity stays rational; arbitrary-precision floats (``mpmath.mpf``,
default 128-bit mantissa) take over once square roots enter.  Numbers
serialize as exact ``"p/q"`` strings in both modes, so round trips are
lossless.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .errors import DomainError

MODE_RATIONAL = "rational"
MODE_FLOAT = "float"
MODES = (MODE_RATIONAL, MODE_FLOAT)

DEFAULT_PRECISION = 128  # mantissa bits for float mode
DEFAULT_REL_TOL = 1e-9

Number = Union[int, Fraction, float, mpf]


def to_fraction(x: Number) -> Fraction:
    """Exact conversion to Fraction; floats and mpf are binary rationals."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpf):
        if not mpmath.isfinite(x):
            raise DomainError(f"cannot convert non-finite value {x} to a rational")
        sign, man, exp, _ = x._mpf_
        if man == 0:
            return Fraction(0)
        # int() strips the gmpy2 mpz the backend may hand out.
        value = Fraction(int(man)) * Fraction(2) ** int(exp)
        return -value if sign else value
    raise TypeError(f"unsupported numeric type {type(x).__name__}")


def to_mpf(x: Number, precision: int = DEFAULT_PRECISION) -> mpf:
    """Convert to mpf, routing Fractions through an exact ratio."""
    with mp.workprec(precision):
        if isinstance(x, mpf):
            return +x
        if isinstance(x, Fraction):
            return mpf(x.numerator) / mpf(x.denominator)
        return mpf(x)


def parse_exact(text: str) -> Fraction:
    """Parse a ``"p/q"`` or decimal string exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc


def format_exact(x: Number) -> str:
    """Serialize as an exact ``"p/q"`` (or plain integer) string."""
    f = to_fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_real(x: Number, digits: int = 17) -> str:
    """Lossy but deterministic decimal rendering for float-valued reports."""
    if isinstance(x, Fraction):
        x = to_mpf(x)
    return mpmath.nstr(mpf(x), digits, strip_zeros=True)


def is_integral(x: Number) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, float):
        return x == math.floor(x)
    if isinstance(x, mpf):
        return bool(mpmath.isint(x))
    raise TypeError(f"unsupported numeric type {type(x).__name__}")


def floor_int(x: Number) -> int:
    if isinstance(x, (int, Fraction, float)):
        return int(math.floor(x))
    if isinstance(x, mpf):
        return int(mpmath.floor(x))
    raise TypeError(f"unsupported numeric type {type(x).__name__}")


def rel_diff(a: Number, b: Number) -> float:
    """|a - b| relative to the larger magnitude; 0 when both vanish."""
    if a == b:
        return 0.0
    if isinstance(a, mpf) or isinstance(b, mpf):
        with mp.workprec(DEFAULT_PRECISION):
            am, bm = to_mpf(a), to_mpf(b)
            scale = max(abs(am), abs(bm))
            return float(abs(am - bm) / scale)
    fa, fb = to_fraction(a), to_fraction(b)
    scale = max(abs(fa), abs(fb))
    return float(abs(fa - fb) / scale)


def numbers_equal(a: Number, b: Number, mode: str, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """Equality decision: exact in rational mode, tolerance in float mode."""
    if mode == MODE_RATIONAL:
        return to_fraction(a) == to_fraction(b)
    return rel_diff(a, b) <= rel_tol
