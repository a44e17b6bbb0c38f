"""Exact convergence radius of an algebraic power-series branch.

The radius is the smallest candidate modulus whose box obstructs the
branch; with no obstruction the radius is infinite.  Every exact answer
is cross-validated against the Hadamard coefficient estimate at order
>= 512, and a disagreement beyond ten percent aborts the run rather than
returning a value that the series itself contradicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .branch import BranchSpec, hensel_lift, validate_branch
from .continuation import TrackerConfig, is_obstructing
from .errors import CrossValidationError, ObstructionUndecidedError
from .estimate import (
    CrossCheck,
    EstimateReport,
    build_report,
    cross_validate,
    cross_validate_infinite,
)
from .exactpoly import BiPoly
from .realalg import RealAlgebraic
from .singularities import CandidateSet, ComplexBox, build_candidate_set


class _Infinity:
    """Sentinel for an infinite radius."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()

# the enforced agreement gate between exact radius and Hadamard estimate
_GATE_RTOL = 0.1
_GATE_ORDER = 512


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the exact-radius pipeline."""

    tracker: TrackerConfig = field(default_factory=TrackerConfig)
    series_order: int = _GATE_ORDER
    rtol: float = 0.1
    digits: int = 12
    box_width: Fraction = Fraction(1, 10**10)


@dataclass
class RadiusResult:
    """Exact radius plus provenance and the numeric cross-check."""

    status: str  # "exact" | "infinite" | "undecided"
    value: object  # RealAlgebraic | INFINITY | None
    candidates: CandidateSet
    obstructing_box: ComplexBox | None
    decimal: str
    cross_check: CrossCheck | None
    estimate: EstimateReport | None
    undecided_modulus: RealAlgebraic | None = None
    puiseux_power: int = 1

    @property
    def is_infinite(self) -> bool:
        return self.status == "infinite"

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"


def exact_radius(b: BranchSpec, cfg: EngineConfig | None = None) -> RadiusResult:
    """Scan candidate moduli in ascending exact order and return the
    first obstructed one; INFINITY when nothing obstructs.

    An undecided obstruction test at the frontier modulus yields a
    first-class undecided result carrying the modulus and the Hadamard
    estimate.
    """
    cfg = cfg or EngineConfig()
    candidates = build_candidate_set(b.P, cfg.box_width)
    order = max(cfg.series_order, _GATE_ORDER)
    series = hensel_lift(b, order)
    report = build_report(series)

    found = None
    undecided_at = None
    for modulus, owners in candidates.moduli:
        obstructed = False
        saw_undecided = None
        for idx in owners:
            others = [bx for j, bx in enumerate(candidates.boxes) if j != idx]
            try:
                if is_obstructing(
                    b, candidates.boxes[idx], modulus, cfg.tracker, other_boxes=others
                ):
                    obstructed = True
                    found = (modulus, candidates.boxes[idx])
                    break
            except ObstructionUndecidedError as exc:
                saw_undecided = exc
        if obstructed:
            break
        if saw_undecided is not None:
            undecided_at = (modulus, saw_undecided)
            break

    if undecided_at is not None:
        modulus, exc = undecided_at
        return RadiusResult(
            status="undecided",
            value=None,
            candidates=candidates,
            obstructing_box=None,
            decimal="undecided",
            cross_check=None,
            estimate=report,
            undecided_modulus=modulus,
        )

    if found is None:
        largest = candidates.largest_modulus
        check = cross_validate_infinite(
            report, float(largest) if largest is not None else None, cfg.rtol
        )
        if not check.passed:
            raise CrossValidationError(
                "infinite verdict contradicted by the coefficient estimate: "
                f"hadamard={report.hadamard!r}",
                report=check,
            )
        return RadiusResult(
            status="infinite",
            value=INFINITY,
            candidates=candidates,
            obstructing_box=None,
            decimal="inf",
            cross_check=check,
            estimate=report,
        )

    modulus, box = found
    check = cross_validate(modulus, report, cfg.rtol)
    if check.relative_deviation is None or check.relative_deviation > _GATE_RTOL:
        raise CrossValidationError(
            f"exact radius {modulus.decimal(12)} vs Hadamard estimate "
            f"{report.hadamard:.6g} violates the {_GATE_RTOL:.0%} gate",
            report=check,
        )
    return RadiusResult(
        status="exact",
        value=modulus,
        candidates=candidates,
        obstructing_box=box,
        decimal=modulus.decimal(cfg.digits),
        cross_check=check,
        estimate=report,
    )


def puiseux_radius(Q: BiPoly, p: int, t0, cfg: EngineConfig | None = None) -> RadiusResult:
    """Radius of the Puiseux series g(X) = h(X^(1/p)), where Q annihilates
    the deramified power series h.

    The power rule gives R(g) = R(h)^p, with INFINITY^p = INFINITY.  The
    branch (Q, t0) is valid exactly when the substituted branch
    (Q(X^p, T), t0) is, since ramification fixes the X = 0 fiber.
    """
    if p < 1:
        raise ValueError("ramification index must be >= 1")
    cfg = cfg or EngineConfig()
    b = validate_branch(Q, t0)
    inner = exact_radius(b, cfg)
    if p == 1 or inner.status != "exact":
        if inner.status == "exact":
            inner.puiseux_power = p
        return inner
    powered = inner.value.pow(p)
    return RadiusResult(
        status="exact",
        value=powered,
        candidates=inner.candidates,
        obstructing_box=inner.obstructing_box,
        decimal=powered.decimal(cfg.digits),
        cross_check=inner.cross_check,
        estimate=inner.estimate,
        puiseux_power=p,
    )


def radius_of(P: BiPoly, t0, cfg: EngineConfig | None = None) -> RadiusResult:
    """Convenience wrapper: validate the branch, then exact_radius."""
    return exact_radius(validate_branch(P, t0), cfg)
