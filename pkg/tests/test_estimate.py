import math
from fractions import Fraction

import pytest

from convrad.branch import SeriesCoefficients, hensel_lift, validate_branch
from convrad.estimate import (
    build_report,
    cross_validate,
    cross_validate_infinite,
    hadamard_estimate,
    ratio_estimate,
)
from convrad.exactpoly import BiPoly, UniPoly
from convrad.realalg import RealAlgebraic


def bp(*tcoeffs):
    return BiPoly([UniPoly(c) for c in tcoeffs])


def geometric(c, r, N):
    c, r = Fraction(c), Fraction(r)
    return SeriesCoefficients(tuple(c * r**k for k in range(N + 1)), N)


EXAMPLE5 = bp([-1], [Fraction(2, 3), -1])
CATALAN = bp([1], [-1], [0, 1])
FIBONACCI = bp([-1], [1, -1, -1])
SQRT = bp([-1, 1], [], [1])


class TestHadamard:
    def test_example5_series(self):
        s = geometric(Fraction(3, 2), Fraction(3, 2), 256)
        est = hadamard_estimate(s)
        assert abs(est - 2 / 3) / (2 / 3) < 0.01

    def test_catalan_1024(self):
        b = validate_branch(CATALAN, 1)
        s = hensel_lift(b, 1024)
        est = hadamard_estimate(s)
        assert abs(est - 0.25) / 0.25 < 0.02

    def test_polynomial_flags_infinite(self):
        coeffs = (Fraction(1),) + (Fraction(0),) * 64
        s = SeriesCoefficients(coeffs, 64)
        assert math.isinf(hadamard_estimate(s))

    def test_short_series_rejected(self):
        with pytest.raises(ValueError):
            hadamard_estimate(geometric(1, 2, 4))

    def test_geometric_error_bound_and_decrease(self):
        c, r = Fraction(5), Fraction(1, 3)
        errors = []
        for N in (64, 256, 1024):
            est = hadamard_estimate(geometric(c, r, N))
            rel = abs(est - 3.0) / 3.0
            assert rel <= abs(math.log(float(c))) / (N / 2) + 1e-12
            errors.append(rel)
        assert errors[0] > errors[1] > errors[2]


class TestRatio:
    def test_fibonacci_golden(self):
        b = validate_branch(FIBONACCI, 1)
        s = hensel_lift(b, 64)
        est = ratio_estimate(s)
        assert est is not None
        assert abs(est - 0.6180339887498949) < 1e-8

    def test_example5_exact_ratio(self):
        s = geometric(Fraction(3, 2), Fraction(3, 2), 64)
        est = ratio_estimate(s)
        assert est == pytest.approx(2 / 3, abs=1e-15)

    def test_sqrt_slowly_converging(self):
        b = validate_branch(SQRT, 1)
        s = hensel_lift(b, 64)
        est = ratio_estimate(s)
        assert est is not None
        assert abs(est - 1.0) < 0.05

    def test_zero_in_tail_gives_none(self):
        coeffs = [Fraction(1)] * 65
        coeffs[60] = Fraction(0)
        assert ratio_estimate(SeriesCoefficients(tuple(coeffs), 64)) is None

    def test_agrees_with_hadamard_when_present(self):
        for P, t0 in [(EXAMPLE5, Fraction(3, 2)), (FIBONACCI, 1), (CATALAN, 1)]:
            s = hensel_lift(validate_branch(P, t0), 128)
            r = ratio_estimate(s)
            h = hadamard_estimate(s)
            if r is not None:
                assert abs(r - h) / h < 0.05


class TestCrossValidate:
    def test_catalan_pass(self):
        exact = RealAlgebraic.from_rational(Fraction(1, 4))
        b = validate_branch(CATALAN, 1)
        report = build_report(hensel_lift(b, 1024))
        rec = cross_validate(exact, report, 0.05)
        assert rec.passed
        assert rec.relative_deviation < 0.05

    def test_large_deviation_fails(self):
        exact = RealAlgebraic.from_rational(Fraction(2, 3))
        report = build_report(geometric(1, Fraction(1, 2), 64))
        # hadamard ~ 2.0 against exact 2/3
        rec = cross_validate(exact, report, 0.05)
        assert not rec.passed

    def test_infinite_pass(self):
        coeffs = (Fraction(1), Fraction(2)) + (Fraction(0),) * 63
        report = build_report(SeriesCoefficients(coeffs, 64))
        rec = cross_validate(None, report, 0.1)
        assert rec.passed

    def test_infinite_with_modulus_bound(self):
        report = build_report(geometric(1, Fraction(1, 100), 64))
        # estimate ~100, largest modulus 1 -> passes the 10x rule
        rec = cross_validate_infinite(report, 1.0, 0.1)
        assert rec.passed
        rec2 = cross_validate_infinite(report, 50.0, 0.1)
        assert not rec2.passed
