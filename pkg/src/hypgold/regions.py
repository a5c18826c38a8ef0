"""Essential regions of the hyperbolas xy = k, k0 < k < k0 + 1.

A unit grid cell in the strip ``x >= 2, y >= x`` is essential when the
curve meets it in more than one point.  Exactly five edge-crossing
configurations occur, named by the tags below; the index set depends
only on k0, never on the particular k inside (k0, k0 + 1).

Edge pairs (entry, exit) per type:

    T2  left -> bottom        square cell, top of a column
    T3  top -> bottom         square cell, pass-through
    T5  top -> right          square cell, bottom of a column
    T7  left -> diagonal      triangular cell on y = x
    T8  top -> diagonal       triangular cell on y = x
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, RegionMismatchError
from .numeric import is_integral, to_fraction


class RegionType(Enum):
    T2 = "T2"
    T3 = "T3"
    T5 = "T5"
    T7 = "T7"
    T8 = "T8"


SQUARE_TYPES = frozenset({RegionType.T2, RegionType.T3, RegionType.T5})
DIAGONAL_TYPES = frozenset({RegionType.T7, RegionType.T8})

# Coefficient of the monomial x_n * x_{n'} (or x_n**2 / 2 on the diagonal)
# contributed by each type to the second derivative of the swept area.
TYPE_COEFFICIENT = {
    RegionType.T2: Fraction(1),
    RegionType.T3: Fraction(0),
    RegionType.T5: Fraction(-1),
    RegionType.T7: Fraction(1, 2),
    RegionType.T8: Fraction(-1, 2),
}


@dataclass(frozen=True)
class EssentialRegionSet:
    """The typed index set E_s(k0), sorted lexicographically."""

    k0: int
    entries: tuple  # ((n, n_prime, RegionType), ...)

    def indices(self) -> tuple:
        return tuple((n, np_) for n, np_, _ in self.entries)

    def types(self) -> dict:
        return {(n, np_): t for n, np_, t in self.entries}

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=4096)
def enumerate_regions(k0: int) -> EssentialRegionSet:
    """All essential regions shared by the hyperbolas xy = k, k0 < k < k0+1.

    For each column n < isqrt(k0) the curve enters at row floor(k0/n)
    (T2), leaves at row floor(k0/(n+1)) (T5) and passes through the rows
    between (T3).  In the last column n = isqrt(k0) the curve exits
    through the diagonal, so the bottom cell is triangular (T7 when it is
    also the top cell, T8 otherwise) and no T5 arises.
    """
    if not isinstance(k0, int) or k0 < 4:
        raise DomainError("essential regions need an integer k0 >= 4")
    root = math.isqrt(k0)
    entries = []
    for n in range(2, root):
        lo = k0 // (n + 1)
        hi = k0 // n
        for i in range(lo, hi + 1):
            if i == hi:
                t = RegionType.T2
            elif i == lo:
                t = RegionType.T5
            else:
                t = RegionType.T3
            entries.append((n, i, t))
    hi = k0 // root
    for m in range(root, hi + 1):
        if m == root:
            t = RegionType.T7 if root == hi else RegionType.T8
        elif m == hi:
            t = RegionType.T2
        else:
            t = RegionType.T3
        entries.append((root, m, t))
    entries.sort(key=lambda e: (e[0], e[1]))
    return EssentialRegionSet(k0=k0, entries=tuple(entries))


def regions_equal(k0a: int, k0b: int) -> bool:
    """True iff both index sets coincide, types included."""
    a, b = enumerate_regions(k0a), enumerate_regions(k0b)
    return a.entries == b.entries


def geometric_region_oracle(k, n: int, n_prime: int):
    """Brute-force validator: intersect xy = k with one cell analytically.

    Works for non-integer k only (so the curve avoids lattice points) and
    returns the RegionType implied by the (entry, exit) edge pair, or None
    when the intersection has at most one point.  Exact in rationals.
    """
    k = to_fraction(k)
    if is_integral(k):
        raise DomainError("the geometric oracle needs a non-integer k")
    if k <= 4:
        raise DomainError("the geometric oracle needs k > 4")
    if not (2 <= n <= n_prime):
        raise DomainError("cells live in the strip 2 <= n <= n_prime")

    if n == n_prime:
        # Triangular cell: the curve runs from the entry edge to (sqrt(k), sqrt(k)).
        x_in = max(Fraction(n), k / (n + 1))
        if x_in > n + 1 or x_in * x_in >= k:
            return None
        entry = "left" if x_in == n else "top"
        return RegionType.T7 if entry == "left" else RegionType.T8

    x_in = max(Fraction(n), k / (n_prime + 1))
    x_out = min(Fraction(n + 1), k / n_prime)
    if x_in >= x_out:
        return None
    entry = "left" if x_in == n else "top"
    exit_ = "right" if x_out == n + 1 else "bottom"
    if (entry, exit_) == ("left", "bottom"):
        return RegionType.T2
    if (entry, exit_) == ("top", "bottom"):
        return RegionType.T3
    if (entry, exit_) == ("top", "right"):
        return RegionType.T5
    # A left -> right crossing needs k0 < n(n+1) <= k0, which is impossible
    # in the strip; reaching here means the enumeration was misread.
    raise RegionMismatchError(
        f"cell ({n},{n_prime}) crossed {entry}->{exit_} at k={k}: no such type"
    )


def oracle_region_set(k) -> tuple:
    """Scan all candidate cells of a non-integer k with the geometric oracle."""
    k = to_fraction(k)
    entries = []
    for n in range(2, math.isqrt(math.floor(k)) + 1):
        top = math.floor(k / n) + 1
        for n_prime in range(n, top + 1):
            t = geometric_region_oracle(k, n, n_prime)
            if t is not None:
                entries.append((n, n_prime, t))
    entries.sort(key=lambda e: (e[0], e[1]))
    return tuple(entries)
