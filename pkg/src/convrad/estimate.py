"""Coefficient-asymptotics estimators: the numeric oracle side.

The Hadamard estimate realizes 1/limsup |a_k|^(1/k) as a max over the
tail window [N/2, N], which is robust to sparse zero coefficients.  The
ratio estimate uses the standard orientation R = lim |a_k / a_(k+1)|;
the report records the convention ("ratio_convention") so downstream
consumers never have to guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .branch import SeriesCoefficients

INFINITE_ESTIMATE = math.inf

RATIO_CONVENTION = "|a_k / a_{k+1}|"

# relative wobble allowed between consecutive tail ratios
_RATIO_STABILITY = 1e-3
_RATIO_WINDOW = 8


@dataclass
class EstimateReport:
    """Numeric radius estimates from exact coefficients."""

    hadamard: float
    ratio: float | None
    order: int
    window: tuple
    agreement: float | None = None
    ratio_convention: str = RATIO_CONVENTION

    @property
    def infinite(self) -> bool:
        return math.isinf(self.hadamard)


@dataclass
class CrossCheck:
    """Outcome of validating an exact radius against the estimators."""

    passed: bool
    hadamard: float
    rtol: float
    exact_decimal: str | None
    relative_deviation: float | None
    detail: str
    ratio_convention: str = RATIO_CONVENTION


def _log_abs(fr: Fraction) -> float:
    """log |fr| for a nonzero rational of any size."""
    return math.log(abs(fr.numerator)) - math.log(fr.denominator)


def hadamard_estimate(s: SeriesCoefficients) -> float:
    """1 / max_{k in [N/2, N]} |a_k|^(1/k); inf when the tail vanishes."""
    N = s.order
    if N < 8:
        raise ValueError("need order >= 8 for a stable tail window")
    lo = N // 2
    best = None
    for k in range(lo, N + 1):
        c = s.coeffs[k]
        if c == 0 or k == 0:
            continue
        v = _log_abs(c) / k
        if best is None or v > best:
            best = v
    if best is None:
        return INFINITE_ESTIMATE
    return math.exp(-best)


def ratio_estimate(s: SeriesCoefficients) -> float | None:
    """|a_(N-1) / a_N| when the tail ratios have settled, else None.

    The last _RATIO_WINDOW ratios must each differ from their neighbor by
    less than _RATIO_STABILITY relatively, and no tail coefficient may
    vanish.
    """
    N = s.order
    if N < 8:
        raise ValueError("need order >= 8 for a stable tail window")
    ks = range(N - _RATIO_WINDOW, N)
    ratios = []
    for k in ks:
        a, b = s.coeffs[k], s.coeffs[k + 1]
        if a == 0 or b == 0:
            return None
        ratios.append(abs(a / b))
    for r1, r2 in zip(ratios, ratios[1:]):
        if abs(float((r2 - r1) / r1)) >= _RATIO_STABILITY:
            return None
    return float(ratios[-1])


def build_report(s: SeriesCoefficients) -> EstimateReport:
    return EstimateReport(
        hadamard=hadamard_estimate(s),
        ratio=ratio_estimate(s),
        order=s.order,
        window=(s.order // 2, s.order),
    )


def cross_validate(exact, report: EstimateReport, rtol: float) -> CrossCheck:
    """Check the numeric estimate against the exact radius.

    ``exact`` is a RealAlgebraic for a finite radius or None for
    infinity.  Finite: pass iff |hadamard - R| / R <= rtol.  Infinite:
    pass iff the estimator flagged an all-zero tail; when a candidate set
    exists use cross_validate_infinite, which also accepts an estimate
    above ten times the largest candidate modulus.
    """
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    if exact is None:
        if report.infinite:
            return CrossCheck(
                passed=True,
                hadamard=report.hadamard,
                rtol=rtol,
                exact_decimal=None,
                relative_deviation=None,
                detail="infinite radius, estimator flagged infinite tail",
            )
        return CrossCheck(
            passed=False,
            hadamard=report.hadamard,
            rtol=rtol,
            exact_decimal=None,
            relative_deviation=None,
            detail="infinite radius but the estimator returned a finite value",
        )
    dec = exact.decimal(15)
    R = float(exact)
    dev = abs(report.hadamard - R) / R if not math.isinf(report.hadamard) else math.inf
    report.agreement = dev
    passed = dev <= rtol
    return CrossCheck(
        passed=passed,
        hadamard=report.hadamard,
        rtol=rtol,
        exact_decimal=dec,
        relative_deviation=dev,
        detail="within tolerance" if passed else "estimate disagrees with exact value",
    )


def cross_validate_infinite(report: EstimateReport, largest_modulus_float, rtol: float) -> CrossCheck:
    """Infinity verdict check when a candidate set is present."""
    if report.infinite:
        return cross_validate(None, report, rtol)
    if largest_modulus_float is not None and report.hadamard > 10 * largest_modulus_float:
        return CrossCheck(
            passed=True,
            hadamard=report.hadamard,
            rtol=rtol,
            exact_decimal=None,
            relative_deviation=None,
            detail="estimate exceeds 10x the largest candidate modulus",
        )
    return cross_validate(None, report, rtol)
