import math
from fractions import Fraction

import pytest

from convrad.branch import hensel_lift, validate_branch
from convrad.errors import InsufficientDataError
from convrad.radius import INFINITY, radius_of
from convrad.reinhardt import (
    DirectionalProfile,
    MultiBiPoly,
    diagonal_exact_bound,
    directional_estimate,
    log_convexity_check,
    make_profile,
    multivariate_expand,
)


def geom2():
    # (1 - X1 - X2) T - 1
    return MultiBiPoly(
        2,
        [
            {(0, 0): -1},
            {(0, 0): 1, (1, 0): -1, (0, 1): -1},
        ],
    )


def product_poly():
    # T - X1*X2 - 1
    return MultiBiPoly(2, [{(0, 0): -1, (1, 1): -1}, {(0, 0): 1}])


class TestExpand:
    def test_binomial_coefficients(self):
        s = multivariate_expand(geom2(), 1, 3)
        # 1/(1 - X1 - X2): a_alpha = binomial(|alpha|, alpha_1)
        assert s.coefficient((0, 0)) == 1
        assert s.coefficient((1, 0)) == 1
        assert s.coefficient((0, 1)) == 1
        assert s.coefficient((1, 1)) == 2
        assert s.coefficient((2, 0)) == 1
        assert s.coefficient((2, 1)) == 3
        assert s.coefficient((3, 0)) == 1

    def test_single_variable_reduces_to_hensel(self):
        P = MultiBiPoly(1, [{(0,): 1}, {(0,): -1}, {(1,): 1}])  # X T^2 - T + 1
        s = multivariate_expand(P, 1, 8)
        b = validate_branch(P.to_bipoly(), 1)
        series = hensel_lift(b, 8)
        for k in range(9):
            assert s.coefficient((k,)) == series[k]

    def test_explicit_polynomial(self):
        s = multivariate_expand(product_poly(), 1, 4)
        assert s.coefficient((0, 0)) == 1
        assert s.coefficient((1, 1)) == 1
        nonzero = {a for a, v in s.coeffs.items() if v != 0}
        assert nonzero == {(0, 0), (1, 1)}


@pytest.fixture(scope="module")
def series64():
    return multivariate_expand(geom2(), 1, 64)


@pytest.fixture(scope="module")
def profiles(series64):
    dirs = [(1, k) for k in range(1, 5)] + [(k, 1) for k in range(2, 6)]
    return [make_profile(series64, geom2(), 1, d) for d in dirs]


class TestDirectionalEstimate:

    def test_diagonal_direction(self, series64):
        est = directional_estimate(series64, (1, 1))
        assert abs(est - 0.5) / 0.5 < 0.02

    def test_weighted_direction(self, series64):
        est = directional_estimate(series64, (1, 2))
        assert abs(est - 1 / 3) / (1 / 3) < 0.02

    def test_polynomial_flags_infinite(self):
        s = multivariate_expand(product_poly(), 1, 16)
        assert math.isinf(directional_estimate(s, (1, 1)))

    def test_scale_covariance(self, series64):
        base = directional_estimate(series64, (1, 1))
        scaled = directional_estimate(series64, (3, 3))
        assert abs(scaled - base / 3) < 1e-9 * base


class TestDiagonalExactBound:
    def test_diagonal(self):
        v = diagonal_exact_bound(geom2(), 1, (1, 1))
        assert v.rational_value() == Fraction(1, 2)

    def test_weighted(self):
        v = diagonal_exact_bound(geom2(), 1, (1, 2))
        assert v.rational_value() == Fraction(1, 3)

    def test_single_variable_matches_exact_radius(self):
        P = MultiBiPoly(1, [{(0,): 1}, {(0,): -1}, {(1,): 1}])
        v = diagonal_exact_bound(P, 1, (1,))
        r = radius_of(P.to_bipoly(), 1)
        assert v.compare(r.value) == 0

    def test_estimate_below_upper_bound(self):
        s = multivariate_expand(geom2(), 1, 64)
        for d in [(1, 1), (1, 2), (2, 1), (1, 3)]:
            est = directional_estimate(s, d)
            ub = float(diagonal_exact_bound(geom2(), 1, d))
            assert est <= ub * 1.05
            # nonnegative coefficients: the two agree within 5%
            assert est >= ub * 0.95


class TestLogConvexity:
    def test_geometric_boundary_passes(self, profiles):
        report = log_convexity_check(profiles, slack=1e-6 + 0.02)
        assert report.passed
        assert report.pairs_checked > 0

    def test_constructed_violation_fails(self, profiles):
        slack = 1e-6 + 0.02
        bad = [
            DirectionalProfile(p.direction, p.rho_estimate, p.rho_upper)
            for p in profiles
        ]
        # dent an interior sample: midpoints of its neighbors then poke
        # above the lowered boundary by well over the slack
        bad[4] = DirectionalProfile(
            bad[4].direction,
            bad[4].rho_estimate * math.exp(-6 * slack),
            bad[4].rho_upper,
        )
        report = log_convexity_check(bad, slack=slack)
        assert not report.passed

    def test_collinear_points_pass(self):
        # boundary r1 * r2 = 1 is a straight line in log coordinates
        profs = [
            DirectionalProfile((Fraction(1), Fraction(k)), 1 / math.sqrt(k), INFINITY)
            for k in (1, 2, 4)
        ]
        report = log_convexity_check(profs, slack=1e-9)
        assert report.passed

    def test_insufficient_data(self):
        profs = [
            DirectionalProfile((Fraction(1), Fraction(1)), 0.5, INFINITY),
            DirectionalProfile((Fraction(1), Fraction(2)), math.inf, INFINITY),
            DirectionalProfile((Fraction(2), Fraction(1)), math.inf, INFINITY),
        ]
        with pytest.raises(InsufficientDataError):
            log_convexity_check(profs, slack=0.1)

    def test_gap_flag_quiet_on_positive_series(self, profiles):
        assert not any(p.gap_flag for p in profiles)
