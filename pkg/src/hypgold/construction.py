"""Recursive coefficient construction of codings whose total-area second
derivative is continuous across every junction.

Free parameters: the base square xi_2^2, one multiplier lambda_i^2 > 1
per index in {3, 4} and per prime in [5, alpha/2 - 1], and the upper-side
seed xi_{alpha/2}^2.  Everything else is forced: composite lower indices
take the ratio step xi_i^2 = (x_i / x_{i-1}) xi_{i-1}^2, the upper side
descends through ratio steps at composite junctions and the junction
formula at prime junctions.  Square roots enter through x-values, so this
module runs in high-precision floats (128-bit mantissa by default).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf

from .coding import PrimeCoding
from .errors import (
    ConstructionFailureError,
    DomainError,
    ScalingViolationError,
)
from .numeric import (
    DEFAULT_PRECISION,
    DEFAULT_REL_TOL,
    MODE_FLOAT,
    Number,
    rel_diff,
    to_fraction,
    to_mpf,
)
from .oracles import is_prime, primes_in
from .points import lower_essential_poly

PROV_RANDOM = "random-prime-choice"
PROV_COMPOSITE = "forced-composite-ratio"
PROV_UPPER_RATIO = "forced-upper-ratio"
PROV_JUNCTION = "forced-prime-junction"


def is_in_N(alpha: int) -> bool:
    """Membership in the window set: alpha even, >= 16, with alpha/2 and
    alpha - 3 both non-prime."""
    return (
        alpha % 2 == 0
        and alpha >= 16
        and not is_prime(alpha // 2)
        and not is_prime(alpha - 3)
    )


def free_indices(alpha: int) -> tuple:
    """{3, 4} plus every prime in [5, alpha/2 - 1]."""
    return (3, 4, *primes_in(5, alpha // 2 - 1))


@dataclass(frozen=True)
class GoldbachSpec:
    """Parameters driving one construction run.

    ``lambda_sq`` pins individual multipliers; ``scalar_u`` sets lambda_i = u
    for every free index (the scalar family used in the u -> 1+ limit).
    Any free choice left unpinned is drawn from the seeded generator,
    uniformly from (1, 4] on the squared multiplier, ascending index order,
    then the upper seed as a multiplier on xi_{alpha/2-1}^2.
    """

    alpha: int
    xi2_sq: object = 1
    xi_half_sq: object = None
    lambda_sq: dict | None = None
    scalar_u: object = None
    seed: int = 0

    def __post_init__(self):
        if not is_in_N(self.alpha):
            raise DomainError(
                f"alpha={self.alpha} is outside the window set (need alpha even, "
                ">= 16, alpha/2 and alpha-3 non-prime)"
            )
        if not to_fraction(self.xi2_sq) > 0:
            raise DomainError("xi2_sq must be positive")
        if self.xi_half_sq is not None and not to_fraction(self.xi_half_sq) > 0:
            raise DomainError("xi_half_sq must be positive")
        if self.lambda_sq is not None and self.scalar_u is not None:
            raise DomainError("give either per-index lambda_sq or scalar_u, not both")
        if self.scalar_u is not None and not to_fraction(self.scalar_u) > 1:
            raise DomainError("scalar_u must exceed 1 (u = 1 stalls the construction)")
        if self.lambda_sq is not None:
            allowed = set(free_indices(self.alpha))
            for i, v in self.lambda_sq.items():
                if i not in allowed:
                    raise DomainError(f"lambda index {i} is not free for alpha={self.alpha}")
                if not to_fraction(v) > 1:
                    raise DomainError(f"lambda_sq[{i}] must exceed 1")


def _resolve_lambdas(spec: GoldbachSpec, precision: int) -> tuple:
    rng = random.Random(spec.seed)
    lam = {}
    pinned = spec.lambda_sq or {}
    for i in free_indices(spec.alpha):
        if spec.scalar_u is not None:
            u = to_mpf(spec.scalar_u, precision)
            lam[i] = u * u
        elif i in pinned:
            lam[i] = to_mpf(pinned[i], precision)
        else:
            lam[i] = to_mpf(1 + 3 * (1 - rng.random()), precision)
    if spec.xi_half_sq is not None:
        half_mult = None
    else:
        half_mult = to_mpf(1 + 3 * (1 - rng.random()), precision)
    return lam, half_mult


@dataclass
class LowerState:
    """Lower coefficients (through alpha/2 - 1) and every x-value through alpha - 5."""

    alpha: int
    precision: int
    xi_sq: dict
    xi: dict
    x: dict
    lambda_sq: dict
    provenance: dict
    half_multiplier: object = None

    def abs_y(self, k0: int):
        """|y_{k0}| = x_{alpha - k0 - 1}."""
        return self.x[self.alpha - k0 - 1]


def _poly_value(xi: dict, j: int):
    poly = lower_essential_poly(j)
    for v in poly.variables():
        assert v in xi, f"x_{j} needs slope index {v} before it is defined"
    return poly.evaluate(xi)


def build_lower(spec: GoldbachSpec, precision: int = DEFAULT_PRECISION) -> LowerState:
    """Ascending pass: free multipliers at prime indices, ratio steps at
    composite indices, x-values computed as soon as their slopes exist."""
    alpha = spec.alpha
    with mp.workprec(precision):
        lam, half_mult = _resolve_lambdas(spec, precision)
        xi_sq = {2: to_mpf(spec.xi2_sq, precision)}
        provenance = {2: PROV_RANDOM}
        for i in (3, 4, 5):
            xi_sq[i] = lam[i] * xi_sq[i - 1]
            provenance[i] = PROV_RANDOM
        xi = {i: mp.sqrt(v) for i, v in xi_sq.items()}
        x: dict = {}

        def ensure_x(j: int):
            if j not in x:
                x[j] = _poly_value(xi, j)
            return x[j]

        for i in range(6, alpha // 2):
            if is_prime(i):
                xi_sq[i] = lam[i] * xi_sq[i - 1]
                provenance[i] = PROV_RANDOM
            else:
                ratio = ensure_x(i) / ensure_x(i - 1)
                xi_sq[i] = ratio * xi_sq[i - 1]
                provenance[i] = PROV_COMPOSITE
            if not xi_sq[i] > xi_sq[i - 1]:
                raise ConstructionFailureError(
                    f"slope squares failed to increase at index {i}"
                )
            xi[i] = mp.sqrt(xi_sq[i])
        for j in range(4, alpha - 4):
            ensure_x(j)
        return LowerState(
            alpha=alpha,
            precision=precision,
            xi_sq=xi_sq,
            xi=xi,
            x=x,
            lambda_sq=lam,
            provenance=provenance,
            half_multiplier=half_mult,
        )


def F_term(state: LowerState, r0: int):
    """F_{r0} = ((alpha - r0)/r0) * x_{r0-1} * (1/xi_{r0-1}^2 - 1/xi_{r0}^2)."""
    if not is_prime(r0) or not 5 <= r0 <= state.alpha // 2 - 1:
        raise DomainError(f"F terms are defined for primes in [5, {state.alpha // 2 - 1}]")
    with mp.workprec(state.precision):
        alpha = mpf(state.alpha)
        return ((alpha - r0) / r0) * state.x[r0 - 1] * (
            1 / state.xi_sq[r0 - 1] - 1 / state.xi_sq[r0]
        )


@dataclass
class ConstructedCoding:
    """A fully built coding (slopes through alpha - 5) plus its provenance."""

    alpha: int
    precision: int
    spec: GoldbachSpec
    xi_sq: dict
    xi: dict
    x: dict
    lambda_sq: dict
    provenance: dict
    _coding: PrimeCoding = field(default=None, repr=False)

    def abs_y(self, k0: int):
        return self.x[self.alpha - k0 - 1]

    def y(self, k0: int):
        return -self.abs_y(k0)

    def prime_coding(self) -> PrimeCoding:
        """Wrap the coefficients as a float-mode coding.

        Indices 0 and 1 are free below the construction's reach and are
        filled ascending under xi_2; indices above alpha - 5 are irrelevant
        and continue with +1 steps so the coding object stays valid.
        """
        if self._coding is None:
            with mp.workprec(self.precision):
                slopes = [self.xi[2] / 3, 2 * self.xi[2] / 3]
                slopes.extend(self.xi[i] for i in range(2, self.alpha - 4))
                slopes.append(self.xi[self.alpha - 5] + 1)
            self._coding = PrimeCoding(
                slopes=tuple(slopes), mode=MODE_FLOAT, precision=self.precision
            )
        return self._coding


def build_upper(spec: GoldbachSpec, lower: LowerState) -> ConstructedCoding:
    """Descending pass over k0 = alpha/2 - 1 .. 5: the upper seed, ratio
    steps at composite k0, the junction formula at prime k0."""
    alpha = spec.alpha
    with mp.workprec(lower.precision):
        xi_sq = dict(lower.xi_sq)
        xi = dict(lower.xi)
        provenance = dict(lower.provenance)
        if spec.xi_half_sq is not None:
            xi_sq[alpha // 2] = to_mpf(spec.xi_half_sq, lower.precision)
        else:
            xi_sq[alpha // 2] = lower.half_multiplier * xi_sq[alpha // 2 - 1]
        provenance[alpha // 2] = PROV_RANDOM
        xi[alpha // 2] = mp.sqrt(xi_sq[alpha // 2])
        for k0 in range(alpha // 2 - 1, 4, -1):
            target = alpha - k0
            prev = xi_sq[target - 1]
            if is_prime(k0):
                if rel_diff(lower.x[k0 - 1], lower.x[k0]) > 1e-25:
                    raise ConstructionFailureError(
                        f"x_{k0 - 1} != x_{k0} at prime junction {k0}"
                    )
                f_term = F_term(lower, k0)
                xi_sq[target] = lower.abs_y(k0 - 1) / (lower.abs_y(k0) / prev + f_term)
                provenance[target] = PROV_JUNCTION
            else:
                xi_sq[target] = (lower.abs_y(k0 - 1) / lower.abs_y(k0)) * prev
                provenance[target] = PROV_UPPER_RATIO
            xi[target] = mp.sqrt(xi_sq[target])
        return ConstructedCoding(
            alpha=alpha,
            precision=lower.precision,
            spec=spec,
            xi_sq=xi_sq,
            xi=xi,
            x=dict(lower.x),
            lambda_sq=dict(lower.lambda_sq),
            provenance=provenance,
        )


def build_goldbach(spec: GoldbachSpec, precision: int = DEFAULT_PRECISION) -> ConstructedCoding:
    """Run both passes and return the constructed coding."""
    return build_upper(spec, build_lower(spec, precision))


@dataclass(frozen=True)
class ContinuityReport:
    alpha: int
    max_rel_gap: float
    gaps: dict  # k0 -> relative junction gap


def junction_gaps(cc: ConstructedCoding) -> ContinuityReport:
    """Relative gap between the one-sided second-derivative values at every
    junction k0 in {5, ..., alpha/2 - 1}."""
    alpha = cc.alpha
    gaps = {}
    with mp.workprec(cc.precision):
        for k0 in range(5, alpha // 2):
            left = cc.x[k0 - 1] / (k0 * cc.xi_sq[k0 - 1]) + cc.y(k0 - 1) / (
                (alpha - k0) * cc.xi_sq[alpha - k0]
            )
            right = cc.x[k0] / (k0 * cc.xi_sq[k0]) + cc.y(k0) / (
                (alpha - k0) * cc.xi_sq[alpha - k0 - 1]
            )
            gaps[k0] = rel_diff(left, right)
    return ContinuityReport(alpha=alpha, max_rel_gap=max(gaps.values()), gaps=gaps)


def verify_continuity(cc: ConstructedCoding, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Max relative junction gap; raises when any junction exceeds rel_tol.

    A gap at or below tolerance is what it means for the constructed
    function to be well-formed.
    """
    report = junction_gaps(cc)
    offenders = {k0: g for k0, g in report.gaps.items() if g > rel_tol}
    if offenders:
        worst = max(offenders, key=offenders.get)
        raise ConstructionFailureError(
            f"junction gap {offenders[worst]:.3e} at k0={worst} exceeds {rel_tol:.1e}"
        )
    return report.max_rel_gap


def eval_G(cc: ConstructedCoding, khat: Number):
    """The constructed function itself: the total-area second derivative at khat."""
    from .areas import hat_AT_second_derivative

    coding = cc.prime_coding()
    with coding.context():
        k = coding.psi_inv(khat)
        return hat_AT_second_derivative(coding, cc.alpha, k)


@dataclass(frozen=True)
class ScalingReport:
    alpha: int
    scale: object
    max_xi_sq_error: float
    max_x_error: float
    max_ratio_error: float


def reduced_form_check(spec: GoldbachSpec, scale, rel_tol: float = 1e-25) -> ScalingReport:
    """Rebuild with xi_2^2 scaled and verify degree-2 homogeneity.

    Every lower xi_i^2 and every x_j must scale linearly with the base
    square, while consecutive-value ratios stay put.
    """
    c = to_fraction(scale)
    if c <= 0:
        raise DomainError("scale must be positive")
    base = build_lower(spec, DEFAULT_PRECISION)
    scaled_spec = GoldbachSpec(
        alpha=spec.alpha,
        xi2_sq=to_fraction(spec.xi2_sq) * c,
        xi_half_sq=spec.xi_half_sq,
        lambda_sq=spec.lambda_sq,
        scalar_u=spec.scalar_u,
        seed=spec.seed,
    )
    scaled = build_lower(scaled_spec, DEFAULT_PRECISION)
    with mp.workprec(DEFAULT_PRECISION):
        cf = to_mpf(c, DEFAULT_PRECISION)
        xi_err = max(
            rel_diff(scaled.xi_sq[i], cf * base.xi_sq[i])
            for i in range(2, spec.alpha // 2)
        )
        x_err = max(
            rel_diff(scaled.x[j], cf * base.x[j])
            for j in range(4, spec.alpha - 4)
        )
        ratio_err = 0.0
        for k0 in range(5, spec.alpha // 2):
            ratio_err = max(
                ratio_err,
                rel_diff(scaled.x[k0 - 1] / scaled.x[k0], base.x[k0 - 1] / base.x[k0]),
                rel_diff(
                    scaled.abs_y(k0 - 1) / scaled.abs_y(k0),
                    base.abs_y(k0 - 1) / base.abs_y(k0),
                ),
            )
    report = ScalingReport(
        alpha=spec.alpha,
        scale=c,
        max_xi_sq_error=xi_err,
        max_x_error=x_err,
        max_ratio_error=ratio_err,
    )
    if max(xi_err, x_err, ratio_err) > rel_tol:
        raise ScalingViolationError(f"homogeneity violated: {report}")
    return report


@dataclass(frozen=True)
class ScalarLimitRow:
    u: object
    k0: int
    x_k0: object
    y_k0: object


@dataclass(frozen=True)
class ScalarLimitResult:
    alpha: int
    xi2_sq: object
    rows: tuple
    max_deviation: tuple  # per u, max over k0 of |value - xi2_sq/2|
    monotone: bool
    final_below: bool | None  # None when the sweep never reaches u <= 1 + 1e-6

    @property
    def converged(self) -> bool:
        return self.monotone and self.final_below is not False


def scalar_limit_sweep(alpha: int, u_list, xi2_sq=1,
                       precision: int = DEFAULT_PRECISION,
                       final_tol: float = 1e-4) -> ScalarLimitResult:
    """Tabulate x_{k0}(u) and |y_{k0}|(u) for the scalar family along u -> 1+.

    The deviation max_{k0} |x_{k0}(u) - xi2_sq/2| must decrease along the
    list (ordered toward 1); when the list reaches u <= 1 + 1e-6 the final
    deviation must also drop below final_tol * xi2_sq.  Failures are
    reported, not raised.
    """
    if any(not to_fraction(u) > 1 for u in u_list):
        raise DomainError("scalar sweep needs every u > 1")
    ordered = sorted(u_list, reverse=True)
    rows = []
    deviations = []
    with mp.workprec(precision):
        half = to_mpf(xi2_sq, precision) / 2
        for u in ordered:
            spec = GoldbachSpec(alpha=alpha, xi2_sq=xi2_sq, scalar_u=u, seed=0)
            lower = build_lower(spec, precision)
            worst = mpf(0)
            for k0 in range(4, alpha // 2):
                xv = lower.x[k0]
                yv = -lower.abs_y(k0)
                rows.append(ScalarLimitRow(u=u, k0=k0, x_k0=xv, y_k0=yv))
                worst = max(worst, abs(xv - half), abs(abs(yv) - half))
            deviations.append(worst)
        monotone = all(a > b for a, b in zip(deviations, deviations[1:]))
        reaches_limit = to_fraction(ordered[-1]) <= 1 + Fraction(1, 10 ** 6)
        final_below = None
        if reaches_limit:
            final_below = bool(deviations[-1] <= final_tol * to_mpf(xi2_sq, precision))
    return ScalarLimitResult(
        alpha=alpha,
        xi2_sq=xi2_sq,
        rows=tuple(rows),
        max_deviation=tuple(deviations),
        monotone=monotone,
        final_below=final_below,
    )
