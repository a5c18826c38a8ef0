"""Deformed-line codings, hyperbolic classification of naturals,
essential-region area calculus, and the Goldbach partition machinery."""

from .coding import PrimeCoding, coding_from_json, coding_to_json, default_coding
from .construction import (
    ConstructedCoding,
    GoldbachSpec,
    LowerState,
    F_term,
    build_goldbach,
    build_lower,
    build_upper,
    eval_G,
    free_indices,
    is_in_N,
    junction_gaps,
    reduced_form_check,
    scalar_limit_sweep,
    verify_continuity,
)
from .areas import (
    AreaFormulaResult,
    SecondDerivativeTerm,
    ab_coefficients,
    area_closed,
    area_quadrature_oracle,
    bounds_chain,
    hat_AI_quadrature,
    hat_AS_quadrature,
    hat_AT_second_derivative,
    hat_lower_sweep,
    hat_area,
    hat_strip_quadrature,
    second_derivative_term,
)
from .errors import (
    ChainViolationError,
    ConstructionFailureError,
    DomainError,
    HypgoldError,
    QuadratureError,
    RangeError,
    RegionMismatchError,
    ScalingViolationError,
    TheoremViolationError,
    VerificationError,
)
from .hyperbola import (
    CurvePoint,
    NumberKind,
    PointKind,
    classify_number,
    classify_point,
    curve_point,
    fhat,
    fhat_one_sided,
    hhat,
    hhat_one_sided,
)
from .oracles import (
    finite_difference_d1,
    finite_difference_d2,
    goldbach_partitions_oracle,
    is_prime,
    primes_in,
    sieve,
)
from .points import (
    EssentialPoint,
    EssentialPolynomial,
    essential_points,
    eval_poly,
    goldbach_characterization,
    lower_essential_poly,
    lower_point_value,
    lower_value,
    monotonicity_report,
    upper_essential_poly,
)
from .regions import (
    EssentialRegionSet,
    RegionType,
    enumerate_regions,
    geometric_region_oracle,
    oracle_region_set,
    regions_equal,
)

__version__ = "0.1.0"
