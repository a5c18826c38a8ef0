"""Deformed anti-diagonals and hyperbolas, one-sided derivatives, and the
point/number classification.

On the deformed plane the image of y = k/x is u -> psi(k / psi_inv(u)).
For codings that identify primes, the transformed curve is differentiable
exactly at points with no natural coordinate, so lattice points on the
curve announce themselves through derivative jumps: the boundary lattice
point (1, k) witnesses that k is natural, interior lattice points witness
compositeness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .coding import PrimeCoding
from .errors import DomainError, RangeError, TheoremViolationError
from .numeric import DEFAULT_REL_TOL, Number, floor_int, is_integral, numbers_equal


class PointKind(Enum):
    SMOOTH = "smooth"
    SEMI_VORTEX = "semi_vortex"
    VORTEX = "vortex"


class NumberKind(Enum):
    PRIME = "prime"
    COMPOSITE_NATURAL = "composite_natural"
    NON_NATURAL = "non_natural"


@dataclass(frozen=True)
class CurvePoint:
    """A point on the deformed curve, with its real-plane pre-image."""

    u: object
    v: object
    x: object
    y: object
    k: object


def fhat(c: PrimeCoding, alpha: int, u: Number):
    """The transformed anti-diagonal: psi(alpha - psi_inv(u)), u in [0, alpha-hat]."""
    if not 1 <= alpha <= c.domain_limit:
        raise DomainError(f"alpha={alpha} outside the coding's domain")
    with c.context():
        x = c.psi_inv(u)
        if x > alpha:
            raise DomainError(f"u={u} beyond alpha-hat")
        return c.psi(alpha - x)


def fhat_one_sided(c: PrimeCoding, alpha: int, m: int) -> tuple:
    """One-sided derivatives of fhat at the deformed integer m.

    Returns (-b_{alpha-m}/a_m, -a_{alpha-m}/b_m) as (left, right);
    differentiable iff a_m * a_{alpha-m} = b_m * b_{alpha-m}.
    """
    if not 1 <= m <= alpha - 1:
        raise RangeError(f"m={m} is not interior to [0, {alpha}]")
    with c.context():
        a_m, b_m = c.one_sided_slopes(m)
        a_c, b_c = c.one_sided_slopes(alpha - m)
        return (-b_c / a_m, -a_c / b_m)


def curve_point(c: PrimeCoding, k: Number, u: Number) -> CurvePoint:
    with c.context():
        k = c._coerce(k)
        x = c.psi_inv(u)
        if x <= 0:
            raise DomainError("curve points need psi_inv(u) > 0")
        y = k / x
        if y > c.domain_limit:
            raise DomainError(f"ordinate {y} beyond the coding's domain")
        return CurvePoint(u=u, v=c.psi(y), x=x, y=y, k=k)


def hhat(c: PrimeCoding, k: Number, u: Number):
    """The transformed hyperbola: psi(k / psi_inv(u))."""
    return curve_point(c, k, u).v


def hhat_one_sided(c: PrimeCoding, k: Number, u: Number) -> tuple:
    """One-sided derivatives (left, right) of hhat at u.

    Four cases, split by naturality of the pre-image coordinates: away from
    natural coordinates both sides agree; a natural ordinate splits the
    numerator slope into (b_{n'}, a_{n'}), a natural abscissa splits the
    denominator into (a_n, b_n), and a lattice point splits both.
    """
    pt = curve_point(c, k, u)
    with c.context():
        x, y = pt.x, pt.y
        factor = -pt.k / (x * x)
        x_nat = is_integral(x) and x >= 1
        y_nat = is_integral(y) and y >= 1
        if not x_nat and not y_nat:
            d = factor * c.slope(floor_int(y)) / c.slope(floor_int(x))
            return (d, d)
        if not x_nat and y_nat:
            a_np, b_np = c.one_sided_slopes(int(y))
            denom = c.slope(floor_int(x))
            return (factor * b_np / denom, factor * a_np / denom)
        if x_nat and not y_nat:
            a_n, b_n = c.one_sided_slopes(int(x))
            numer = c.slope(floor_int(y))
            return (factor * numer / a_n, factor * numer / b_n)
        a_n, b_n = c.one_sided_slopes(int(x))
        a_np, b_np = c.one_sided_slopes(int(y))
        return (factor * b_np / a_n, factor * a_np / b_n)


def classify_point(c: PrimeCoding, k: Number, u: Number,
                   rel_tol: float = DEFAULT_REL_TOL) -> PointKind:
    """Classify one on-curve point in the working quadrant x >= 1, y >= x.

    smooth: both one-sided derivatives agree.  semi_vortex: the jump sits
    at the boundary lattice point x = 1.  vortex: the jump sits at an
    interior lattice point (both coordinates natural, x > 1) or at a point
    with exactly one natural coordinate.
    """
    if not c.identifies_primes:
        raise DomainError("point classification needs a coding that identifies primes")
    pt = curve_point(c, k, u)
    if pt.x < 1 or pt.y < pt.x:
        raise DomainError(
            f"point ({pt.x}, {pt.y}) outside the working quadrant x >= 1, y >= x"
        )
    left, right = hhat_one_sided(c, k, u)
    if numbers_equal(left, right, c.mode, rel_tol):
        return PointKind.SMOOTH
    x_nat = is_integral(pt.x)
    y_nat = is_integral(pt.y)
    if x_nat and y_nat and pt.x == 1:
        return PointKind.SEMI_VORTEX
    return PointKind.VORTEX


def classify_number(c: PrimeCoding, k: Number,
                    rel_tol: float = DEFAULT_REL_TOL) -> NumberKind:
    """Classify k > 1 from derivative jumps of its deformed hyperbola.

    Scans the curve restricted to 1 <= x <= sqrt(k) for lattice points
    (the only points whose jumps distinguish k: points with exactly one
    natural coordinate jump on every curve) and verifies each candidate
    jump.  k is natural iff the boundary lattice point (1, k) exists,
    prime iff no interior lattice point accompanies it.
    """
    if not c.identifies_primes:
        raise DomainError("number classification needs a coding that identifies primes")
    with c.context():
        kv = c._coerce(k)
        if kv <= 1:
            raise DomainError("classification needs k > 1")
        if kv > c.max_index:
            raise RangeError(f"k={k} beyond slope index {c.max_index}")
        if not is_integral(kv):
            return NumberKind.NON_NATURAL
        kn = int(kv)
        semi = 0
        vortex = 0
        for d in range(1, math.isqrt(kn) + 1):
            if kn % d:
                continue
            kind = classify_point(c, kv, c.psi(d), rel_tol=rel_tol)
            if kind is PointKind.SMOOTH:
                raise TheoremViolationError(
                    f"no derivative jump at lattice point ({d}, {kn // d}) on xy={kn}"
                )
            if kind is PointKind.SEMI_VORTEX:
                semi += 1
            else:
                vortex += 1
        if semi != 1:
            raise TheoremViolationError(
                f"expected exactly one boundary lattice point on xy={kn}, saw {semi}"
            )
        return NumberKind.COMPOSITE_NATURAL if vortex else NumberKind.PRIME
