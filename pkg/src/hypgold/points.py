"""Essential polynomials and essential points.

The second derivative of the swept lower area, restricted to one unit
interval [k0, k0+1] and written in deformed coordinates, factors as
``P(xi) / (xi_{k0}**2 * k)`` where P is a homogeneous degree-2 form with
coefficients in {+-1, +-1/2} determined entirely by the typed region set
of k0.  Evaluating the lower form at the coding's slopes gives x_{k0},
the mirrored upper form gives y_{k0} = -x_{alpha-k0-1}; the pair
(x_{k0}, y_{k0}) is the essential point.  Repetition of consecutive
essential points characterizes the Goldbach partitions of alpha inside
the window {5, ..., alpha/2 - 1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coding import PrimeCoding
from .errors import DomainError, RangeError, TheoremViolationError
from .numeric import DEFAULT_REL_TOL, numbers_equal
from .oracles import is_prime, primes_in
from .regions import TYPE_COEFFICIENT, enumerate_regions


@dataclass(frozen=True)
class EssentialPolynomial:
    """Sparse homogeneous degree-2 form; terms map (i, j), i <= j, to coefficients."""

    terms: tuple  # (((i, j), Fraction), ...) sorted, zero coefficients dropped

    @staticmethod
    def from_dict(d: dict) -> "EssentialPolynomial":
        items = tuple(sorted((pair, c) for pair, c in d.items() if c != 0))
        return EssentialPolynomial(terms=items)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def variables(self) -> tuple:
        seen = set()
        for (i, j), _ in self.terms:
            seen.add(i)
            seen.add(j)
        return tuple(sorted(seen))

    def negated(self) -> "EssentialPolynomial":
        return EssentialPolynomial(terms=tuple((pair, -c) for pair, c in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, xi):
        """Substitute x_i := xi(i).  xi is a coding, a mapping, or a callable."""
        getter = _slope_getter(xi)
        total = 0
        for (i, j), coeff in self.terms:
            total = total + coeff * getter(i) * getter(j)
        return total


def _slope_getter(xi):
    if isinstance(xi, PrimeCoding):
        return xi.slope
    if hasattr(xi, "__getitem__"):
        return xi.__getitem__
    return xi


@lru_cache(maxsize=4096)
def lower_essential_poly(k0: int) -> EssentialPolynomial:
    """Sum of the per-type monomials over the essential regions of k0."""
    terms: dict = {}
    for n, n_prime, rtype in enumerate_regions(k0):
        coeff = TYPE_COEFFICIENT[rtype]
        if coeff == 0:
            continue
        key = (n, n_prime)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return EssentialPolynomial.from_dict(terms)


def upper_essential_poly(alpha: int, k0: int) -> EssentialPolynomial:
    """The mirrored form: the negated lower polynomial of alpha - k0 - 1.

    The upper-area second derivative carries a global minus, so the stored
    polynomial is negated and y_{k0} = -x_{alpha - k0 - 1} comes out negative.
    """
    _check_alpha(alpha)
    if not 4 <= k0 <= alpha // 2 - 1:
        raise RangeError(f"upper polynomial needs 4 <= k0 <= {alpha // 2 - 1}")
    return lower_essential_poly(alpha - k0 - 1).negated()


def eval_poly(p: EssentialPolynomial, xi):
    """Evaluate at the slopes; exact when the slopes are rational."""
    if isinstance(xi, PrimeCoding):
        with xi.context():
            return p.evaluate(xi)
    return p.evaluate(xi)


def lower_point_value(xi, k0: int):
    """Telescoped closed form of the lower polynomial's value.

    x_{k0} = sum_n xi_n*(xi_{floor(k0/n)} - xi_{floor(k0/(n+1))}) over
    n = 2 .. isqrt(k0)-1, plus the tail xi_r**2/2 when r = floor(k0/r)
    (r = isqrt(k0)) and xi_r*(xi_{floor(k0/r)} - xi_r/2) otherwise.
    Kept as an independent code path for cross-checking eval_poly.
    """
    if k0 < 4:
        raise DomainError("lower point values need k0 >= 4")
    getter = _slope_getter(xi)
    root = math.isqrt(k0)
    total = 0
    for n in range(2, root):
        total = total + getter(n) * (getter(k0 // n) - getter(k0 // (n + 1)))
    r = getter(root)
    hi = k0 // root
    if root == hi:
        total = total + r * r / 2
    else:
        total = total + r * getter(hi) - r * r / 2
    return total


@dataclass(frozen=True)
class EssentialPoint:
    k0: int
    x: object  # > 0 for strict codings
    y: object  # < 0 for strict codings


def _check_alpha(alpha: int) -> None:
    if alpha < 16 or alpha % 2:
        raise DomainError("alpha must be an even number >= 16")


def _check_coding(c: PrimeCoding, alpha: int) -> None:
    if c.max_index < alpha - 5:
        raise RangeError(
            f"coding defines slopes through {c.max_index}, need index {alpha - 5}"
        )
    # The repetition dichotomies need strictly increasing slopes through
    # alpha/2 - 1 (the coding "adapted to alpha"); constructed codings are
    # allowed to dip above that, which the essential points never see.
    head = c.slopes[: alpha // 2]
    if any(a >= b for a, b in zip(head, head[1:])):
        raise DomainError(
            f"essential points need slopes strictly increasing through {alpha // 2 - 1}"
        )


@lru_cache(maxsize=65536)
def lower_value(c: PrimeCoding, k0: int):
    """x_{k0}: the lower essential polynomial evaluated at the coding (memoized)."""
    with c.context():
        return lower_essential_poly(k0).evaluate(c)


def essential_points(c: PrimeCoding, alpha: int) -> list:
    """P_{k0} = (x_{k0}, y_{k0}) for k0 = 4 .. alpha/2 - 1."""
    _check_alpha(alpha)
    _check_coding(c, alpha)
    out = []
    for k0 in range(4, alpha // 2):
        x = lower_value(c, k0)
        y = -lower_value(c, alpha - k0 - 1)
        out.append(EssentialPoint(k0=k0, x=x, y=y))
    return out


@dataclass(frozen=True)
class IndexComparison:
    """One junction record from the monotonicity sweep."""

    k0: int
    x_repeats: bool        # x_{k0-1} == x_{k0}
    k0_prime: bool         # expected iff x repeats
    y_repeats: bool        # y_{k0-1} == y_{k0}
    complement_prime: bool  # alpha - k0 prime; expected iff y repeats


def monotonicity_report(c: PrimeCoding, alpha: int,
                        rel_tol: float = DEFAULT_REL_TOL) -> list:
    """Verify the ordering and the repetition dichotomies of both coordinates.

    Checks 0 < x_4 <= ... <= x_{alpha/2-1} and y_4 <= ... <= y_{alpha/2-1} < 0,
    plus x_{k0-1} = x_{k0} iff k0 prime and y_{k0-1} = y_{k0} iff alpha - k0
    prime.  Any failure raises TheoremViolationError: with a strict coding
    these are theorems, so a failure flags an implementation bug.
    """
    pts = essential_points(c, alpha)
    records = []
    for pt in pts:
        if not (pt.x > 0 and pt.y < 0):
            raise TheoremViolationError(
                f"essential point sign violated at k0={pt.k0}: x={pt.x}, y={pt.y}"
            )
    for prev, cur in zip(pts, pts[1:]):
        if cur.x < prev.x or cur.y < prev.y:
            raise TheoremViolationError(
                f"essential point ordering violated between k0={prev.k0} and {cur.k0}"
            )
        x_rep = numbers_equal(prev.x, cur.x, c.mode, rel_tol)
        y_rep = numbers_equal(prev.y, cur.y, c.mode, rel_tol)
        rec = IndexComparison(
            k0=cur.k0,
            x_repeats=x_rep,
            k0_prime=is_prime(cur.k0),
            y_repeats=y_rep,
            complement_prime=is_prime(alpha - cur.k0),
        )
        if rec.x_repeats != rec.k0_prime or rec.y_repeats != rec.complement_prime:
            raise TheoremViolationError(
                f"repetition dichotomy violated at alpha={alpha}, k0={rec.k0}: {rec}"
            )
        records.append(rec)
    return records


def goldbach_characterization(c: PrimeCoding, alpha: int,
                              rel_tol: float = DEFAULT_REL_TOL) -> list:
    """All k0 in {5, ..., alpha/2 - 1} whose essential point repeats the previous one.

    The result is reconciled against the sieve; a mismatch raises
    TheoremViolationError.
    """
    records = monotonicity_report(c, alpha, rel_tol=rel_tol)
    repeated = [r.k0 for r in records if r.x_repeats and r.y_repeats]
    expected = [
        p for p in primes_in(5, alpha // 2 - 1) if is_prime(alpha - p)
    ]
    if repeated != expected:
        raise TheoremViolationError(
            f"characterization/sieve mismatch at alpha={alpha}: "
            f"points gave {repeated}, sieve gives {expected}"
        )
    return repeated
