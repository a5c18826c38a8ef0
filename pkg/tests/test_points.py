"""Essential polynomials term-for-term, evaluation paths, sign and
repetition theorems, and the Goldbach characterization."""

import random
from fractions import Fraction

import pytest

from hypgold.coding import PrimeCoding, default_coding
from hypgold.errors import DomainError, RangeError, TheoremViolationError
from hypgold.oracles import is_prime, primes_in
from hypgold.points import (
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
from hypgold.regions import TYPE_COEFFICIENT, enumerate_regions

from conftest import harmonic_coding, identity_coding, seeded_coding, strict_families

H = Fraction(1, 2)


def test_poly_12_term_for_term():
    p = lower_essential_poly(12)
    assert p.as_dict() == {
        (2, 6): 1, (2, 4): -1, (3, 4): 1, (3, 3): -H,
    }


def test_poly_4():
    assert lower_essential_poly(4).as_dict() == {(2, 2): H}


def test_poly_9():
    assert lower_essential_poly(9).as_dict() == {
        (2, 4): 1, (2, 3): -1, (3, 3): H,
    }


def test_poly_prime_repetition():
    for p in primes_in(5, 200):
        assert lower_essential_poly(p - 1) == lower_essential_poly(p)


def test_poly_homogeneous_coefficients():
    for k0 in range(4, 120):
        for (i, j), coeff in lower_essential_poly(k0).terms:
            assert 2 <= i <= j <= k0 // 2
            assert coeff in (1, -1, H, -H)


def test_upper_poly_is_negated_mirror():
    assert upper_essential_poly(18, 8) == lower_essential_poly(9).negated()
    assert upper_essential_poly(18, 5) == lower_essential_poly(12).negated()
    with pytest.raises(RangeError):
        upper_essential_poly(18, 9)
    with pytest.raises(RangeError):
        upper_essential_poly(18, 3)


def test_eval_hand_example():
    xi = {2: Fraction(1), 3: Fraction(2), 4: Fraction(3), 6: Fraction(5)}
    assert eval_poly(lower_essential_poly(12), xi) == 6


def test_eval_zero_poly():
    assert eval_poly(EssentialPolynomial(terms=()), identity_coding(4)) == 0


def test_eval_identity_coding_gives_half():
    c = identity_coding(200)
    for k0 in range(4, 401):
        assert lower_point_value(lambda i: Fraction(1), k0) == H
    for k0 in range(4, 99):
        assert eval_poly(lower_essential_poly(k0), c) == H


def test_two_evaluation_paths_agree():
    c = seeded_coding(200, 13)
    for k0 in range(4, 401):
        direct = sum(
            (TYPE_COEFFICIENT[t] * c.slope(n) * c.slope(np_)
             for n, np_, t in enumerate_regions(k0)),
            start=Fraction(0),
        )
        assert eval_poly(lower_essential_poly(k0), c) == direct
        assert lower_point_value(c.slope, k0) == direct


def test_essential_points_signs_alpha18():
    c = default_coding(16)
    pts = essential_points(c, 18)
    assert [p.k0 for p in pts] == [4, 5, 6, 7, 8]
    for p in pts:
        assert p.x > 0 > p.y
    # x_4 = xi_2^2 / 2 and y_4 = -x_13.
    assert pts[0].x == c.slope(2) ** 2 / 2
    assert pts[0].y == -lower_value(c, 13)


def test_essential_points_preconditions():
    with pytest.raises(RangeError):
        essential_points(default_coding(10), 18)
    with pytest.raises(DomainError):
        essential_points(identity_coding(20), 18)
    with pytest.raises(DomainError):
        essential_points(default_coding(16), 17)


def test_monotonicity_alpha18():
    c = default_coding(16)
    records = {r.k0: r for r in monotonicity_report(c, 18)}
    assert records[5].x_repeats and records[5].k0_prime
    assert records[7].x_repeats and records[7].k0_prime
    assert not records[6].x_repeats and not records[6].k0_prime
    # y_4 = y_5 iff 13 = 18 - 5 prime.
    assert records[5].y_repeats and records[5].complement_prime


def test_characterization_examples():
    assert goldbach_characterization(default_coding(16), 18) == [5, 7]
    assert goldbach_characterization(default_coding(16), 16) == [5]
    assert goldbach_characterization(default_coding(20), 24) == [5, 7, 11]


def test_characterization_sweep_multiple_codings():
    for c in strict_families(120):
        for alpha in range(16, 121, 2):
            expected = [p for p in primes_in(5, alpha // 2 - 1) if is_prime(alpha - p)]
            assert goldbach_characterization(c, alpha) == expected, (alpha,)


def test_scale_invariance():
    base = seeded_coding(40, 3)
    scaled = PrimeCoding(slopes=tuple(Fraction(7, 3) * s for s in base.slopes))
    factor = Fraction(7, 3) ** 2
    for k0 in range(4, 40):
        assert lower_value(scaled, k0) == factor * lower_value(base, k0)
    alpha = 36
    assert goldbach_characterization(base, alpha) == goldbach_characterization(scaled, alpha)


def test_theorem_violation_surfaces_for_bad_equalities():
    # A coding tuned so x_5 != x_4 is impossible; instead corrupt the
    # report check by faking a non-strict head, which the precondition
    # rejects before any wrong verdict can escape.
    slopes = list(default_coding(16).slopes)
    slopes[3] = slopes[2]
    with pytest.raises(DomainError):
        monotonicity_report(PrimeCoding(slopes=tuple(slopes)), 18)


def test_variables_within_window():
    for alpha in (18, 24, 36):
        for k0 in range(4, alpha // 2):
            upper = upper_essential_poly(alpha, k0)
            for v in upper.variables():
                assert 2 <= v <= (alpha - k0 - 1) // 2
