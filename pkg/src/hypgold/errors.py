"""Exception hierarchy.

The CLI maps these onto exit codes: user-input problems (bad arguments,
values outside a function's domain) exit 1, while ``VerificationError``
subclasses signal that a mathematical check failed and exit 2.
"""


class HypgoldError(Exception):
    """Base class for all package errors."""


class DomainError(HypgoldError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class RangeError(HypgoldError, ValueError):
    """An index lies outside the coding's representable range."""


class RegionMismatchError(HypgoldError, ValueError):
    """A (region, type, k) combination is inconsistent."""


class QuadratureError(HypgoldError, RuntimeError):
    """Adaptive quadrature failed to converge to the requested error."""


class VerificationError(HypgoldError):
    """A verified mathematical property failed; indicates an implementation
    bug or a corrupted input, never a legitimate data condition."""


class TheoremViolationError(VerificationError):
    """A theorem-backed dichotomy (equalities, signs, sieve agreement) failed."""


class ChainViolationError(VerificationError):
    """The bounds interleaving chain failed for a strict coding."""


class ConstructionFailureError(VerificationError):
    """A constructed coding left a junction gap above tolerance."""


class ScalingViolationError(VerificationError):
    """Rescaling the base coefficient did not act homogeneously."""
