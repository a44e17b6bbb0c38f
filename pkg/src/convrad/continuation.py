"""Numeric analytic continuation of a branch and the obstruction decision.

Tracking is predictor-corrector: a tangent step from dt/dx = -P_X/P_T
followed by Newton in T, with the step halved whenever the corrector
struggles or the tracked root gets within three Newton basins of a
sibling root.  The obstruction test at a candidate approaches it radially
with a geometrically shrinking offset and classifies the outcome:
leading-coefficient blowup, regular limit, or ramification confirmed by
a monodromy loop.  Inconclusive runs surface as
ObstructionUndecidedError, never as a guess.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .branch import BranchSpec
from .errors import ObstructionUndecidedError, TrackingFailedError
from .exactpoly import BiPoly
from .singularities import ComplexBox

# classification thresholds (relative to natural scales)
_GROWTH_RATIO = 1.3
_CRITICAL_REL = 1e-3
_LC_DROP_REL = 1e-9
_MAX_EXTRA_STAGES = 60


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 0.1
    min_step: float = 1e-9
    newton_tol: float = 1e-10
    divergence_threshold: float = 1e8
    precision_bits: int = 53

    def __post_init__(self):
        if not (0 < self.min_step <= self.initial_step):
            raise ValueError("need 0 < min_step <= initial_step")
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")


@dataclass(frozen=True)
class Path:
    """Polyline in C with a clearance certificate.

    ``clearance`` is the minimum distance from the polyline to every
    non-target candidate box the planner was told about; tracking along
    the path is then justified by the identity theorem.
    """

    waypoints: tuple
    clearance: float

    @classmethod
    def from_points(cls, points, clearance=math.inf):
        pts = [complex(p) for p in points]
        dedup = [pts[0]]
        for p in pts[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        return cls(tuple(dedup), clearance)


@dataclass
class TrackDiagnostics:
    accepted_steps: int = 0
    max_residual: float = 0.0
    min_step_used: float = math.inf


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    """Distance from point p to segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def polyline_clearance(points, boxes, skip_near=()) -> float:
    """Minimum distance from a polyline to the given boxes.

    Boxes whose center is within 1e-12 of a point in ``skip_near`` are
    ignored (the expansion point itself, or the approach target).
    """
    best = math.inf
    for box in boxes:
        c = box.center_complex()
        if any(abs(c - s) < 1e-12 for s in skip_near):
            continue
        radius = max(float(w) for w in box.widths()) / 2
        for a, b in zip(points, points[1:]):
            best = min(best, _segment_distance(a, b, c) - radius)
    return best


def plan_path(end: complex, boxes, avoid_radius: float, start: complex = 0j) -> Path:
    """Dog-leg route from start to end that skirts candidate boxes.

    Obstacles within ``avoid_radius`` of a segment get a perpendicular
    detour waypoint at twice that radius.  Boxes containing the start or
    the end are not treated as obstacles.
    """
    obstacles = []
    for box in boxes:
        c = box.center_complex()
        if abs(c - start) < 1e-12 or abs(c - end) <= avoid_radius + 1e-15:
            continue
        obstacles.append(c)
    points = [complex(start), complex(end)]
    for _ in range(4):
        changed = False
        new_points = [points[0]]
        for a, b in zip(points, points[1:]):
            hits = []
            ab = b - a
            for c in obstacles:
                if _segment_distance(a, b, c) < avoid_radius and abs(ab) > 0:
                    s = ((c - a) * ab.conjugate()).real / abs(ab) ** 2
                    if 1e-9 < s < 1 - 1e-9:
                        hits.append((s, c))
            for s, c in sorted(hits):
                unit = ab / abs(ab)
                detour = c + 2.0 * avoid_radius * (1j * unit)
                new_points.append(detour)
                changed = True
            new_points.append(b)
        points = new_points
        if not changed:
            break
    clearance = polyline_clearance(points, boxes, skip_near=(start, end))
    return Path(tuple(points), clearance if clearance != math.inf else math.inf)


class _Tracker:
    """Predictor-corrector continuation of one branch value."""

    def __init__(self, P: BiPoly, cfg: TrackerConfig, diagnostics=None):
        self.P = P
        self.PT = P.derivative_t()
        self.PX = P.derivative_x()
        self.cfg = cfg
        self.diag = diagnostics
        self.deg = P.deg_t
        self.height = max(P.max_coeff_height(), 1.0)
        self.use_mp = cfg.precision_bits > 53

    def _num(self, z):
        if self.use_mp:
            return mpmath.mpc(z)
        return complex(z)

    def _scale(self, x, t):
        b = (1.0 + abs(complex(t))) ** self.deg
        xb = (1.0 + abs(complex(x))) ** max(
            (u.degree for u in self.P.tcoeffs), default=0
        )
        return self.deg * self.height * b * xb + 1.0

    def _newton(self, x, t):
        tol = self.cfg.newton_tol
        for _ in range(40):
            pv = self.P.eval(x, t)
            dv = self.PT.eval(x, t)
            if abs(dv) == 0:
                return None
            step = pv / dv
            t = t - step
            if abs(step) <= tol * (1.0 + abs(complex(t))):
                return t
        return None

    def _roots_at(self, x):
        cs = [complex(v) for v in self.P.coeffs_at(complex(x))]
        top = max(abs(c) for c in cs)
        if top == 0:
            return []
        while cs and abs(cs[-1]) < 1e-13 * top:
            cs.pop()
        if len(cs) <= 1:
            return []
        return list(np.roots(list(reversed(cs))))

    def run_segment(self, t, a, b):
        cfg = self.cfg
        if self.use_mp:
            ctx = mpmath.workprec(cfg.precision_bits)
            ctx.__enter__()
        else:
            ctx = None
        try:
            a = self._num(a)
            b = self._num(b)
            s = 0.0
            h = cfg.initial_step
            while s < 1.0:
                s_next = min(s + h, 1.0)
                x_cur = a + s * (b - a)
                x_new = a + s_next * (b - a)
                accepted, t_new = self._try_step(x_cur, x_new, t)
                if accepted:
                    t = t_new
                    s = s_next
                    if self.diag is not None:
                        self.diag.accepted_steps += 1
                        self.diag.min_step_used = min(self.diag.min_step_used, h)
                        res = abs(self.P.eval(x_new, t)) / self._scale(x_new, t)
                        self.diag.max_residual = max(self.diag.max_residual, float(res))
                    if abs(complex(t)) > 100 * cfg.divergence_threshold:
                        raise TrackingFailedError(
                            "tracked value exploded", reason="diverged"
                        )
                    h = min(h * 1.5, cfg.initial_step)
                else:
                    h *= 0.5
                    if h < cfg.min_step:
                        raise TrackingFailedError(
                            "step size underflow", reason="step-underflow"
                        )
            return t
        finally:
            if ctx is not None:
                ctx.__exit__(None, None, None)

    def _try_step(self, x_cur, x_new, t):
        dv = self.PT.eval(x_cur, t)
        if abs(dv) == 0:
            return False, t
        slope = -self.PX.eval(x_cur, t) / dv
        t_pred = t + slope * (x_new - x_cur)
        t_new = self._newton(x_new, t_pred)
        if t_new is None:
            return False, t
        basin = max(
            abs(complex(t_new - t_pred)),
            self.cfg.newton_tol * (1.0 + abs(complex(t_new))),
        )
        roots = self._roots_at(x_new)
        if len(roots) >= 2:
            dists = sorted(abs(r - complex(t_new)) for r in roots)
            separation = dists[1]
            if separation < 3.0 * basin:
                return False, t
        # reject steps that silently hop to a different branch
        if abs(complex(t_new - t)) > 0.5 + 2.0 * abs(complex(t_pred - t)) + 0.25 * abs(
            complex(t)
        ):
            return False, t
        return True, t_new


def track_root(b: BranchSpec, path: Path, cfg: TrackerConfig | None = None,
               diagnostics: TrackDiagnostics | None = None):
    """Continue the branch value along the path; returns the end value.

    The path must start at the expansion point 0.
    """
    cfg = cfg or TrackerConfig()
    if not path.waypoints or abs(path.waypoints[0]) != 0:
        raise ValueError("path must start at the origin")
    tracker = _Tracker(b.P, cfg, diagnostics)
    t = tracker._num(complex(b.t0))
    for a, w in zip(path.waypoints, path.waypoints[1:]):
        t = tracker.run_segment(t, a, w)
    return t


def _stage_points(center: complex, delta: float):
    u = center / abs(center)
    return center - delta * u


def is_obstructing(
    b: BranchSpec,
    box: ComplexBox,
    modulus,
    cfg: TrackerConfig | None = None,
    other_boxes=(),
) -> bool:
    """Decide whether the branch fails to continue past this candidate.

    True when the tracked value blows up along the radial approach
    (leading-coefficient pole) or when the branch lands on a nearly
    multiple root and a loop around the candidate permutes it away
    (nontrivial monodromy).  False when the value stabilizes at a simple
    root, including the degree-drop case lc(x*) = 0 with a finite limit.
    """
    cfg = cfg or TrackerConfig()
    m = box.center_complex()
    if m == 0:
        return False  # the expansion point: the series radius is positive
    dmin = min(
        (
            abs(m - ob.center_complex())
            for ob in other_boxes
            if abs(ob.center_complex() - m) > 1e-15
        ),
        default=math.inf,
    )
    delta0 = min(abs(m) / 4.0, dmin / 4.0)
    tracker = _Tracker(b.P, cfg)
    first = _stage_point(m, delta0)
    approach = plan_path(first, other_boxes, avoid_radius=delta0 / 2)
    try:
        t = tracker._num(complex(b.t0))
        for a, w in zip(approach.waypoints, approach.waypoints[1:]):
            t = tracker.run_segment(t, a, w)
    except TrackingFailedError as exc:
        raise ObstructionUndecidedError(
            f"approach tracking failed before the first stage: {exc}"
        ) from exc
    t_first = t
    values = [complex(t)]
    delta = delta0
    x_prev = first
    try:
        for _ in range(3):
            delta /= 2.0
            x_next = _stage_point(m, delta)
            t = tracker.run_segment(t, x_prev, x_next)
            x_prev = x_next
            values.append(complex(t))
    except TrackingFailedError as exc:
        if exc.reason == "diverged":
            return True  # exploded beyond the hard cap during the approach
        raise ObstructionUndecidedError(f"stage tracking failed: {exc}") from exc

    if _all_growing(values):
        # suspected pole: keep halving until the threshold confirms it
        confirmed = None
        for _ in range(_MAX_EXTRA_STAGES):
            if abs(values[-1]) > cfg.divergence_threshold:
                return True
            delta /= 2.0
            x_next = _stage_point(m, delta)
            try:
                t = tracker.run_segment(t, x_prev, x_next)
            except TrackingFailedError as exc:
                if exc.reason == "diverged":
                    return True
                raise ObstructionUndecidedError(
                    f"blowup confirmation failed: {exc}"
                ) from exc
            x_prev = x_next
            values.append(complex(t))
            if not _all_growing(values[-3:]):
                confirmed = False
                break
        if confirmed is None:
            raise ObstructionUndecidedError(
                "values keep growing but never reach the divergence threshold"
            )
        if abs(values[-1]) > cfg.divergence_threshold:
            return True

    # stabilized: classify the limit at the exact candidate point
    t_lim = _extrapolate_limit(values)
    cs = [complex(v) for v in b.P.coeffs_at(m)]
    top = max(abs(c) for c in cs)
    near_multiple = False
    if abs(cs[-1]) < _LC_DROP_REL * top:
        dropped = list(cs)
        while dropped and abs(dropped[-1]) < _LC_DROP_REL * top:
            dropped.pop()
        if len(dropped) <= 1:
            raise ObstructionUndecidedError(
                "specialization collapses to a constant at the candidate"
            )
        droots = np.roots(list(reversed(dropped)))
        nearest = min(droots, key=lambda r: abs(r - t_lim))
        if abs(nearest - t_lim) > 0.05 * (1.0 + abs(t_lim)):
            raise ObstructionUndecidedError(
                "stable limit does not match any finite root after degree drop"
            )
        others = sorted(abs(r - nearest) for r in droots if r is not nearest)
        near_multiple = bool(others) and others[0] < 1e-5 * (1.0 + abs(nearest))
    else:
        roots = np.roots(list(reversed(cs)))
        nearest = min(roots, key=lambda r: abs(r - t_lim))
        if abs(nearest - t_lim) > 0.05 * (1.0 + abs(t_lim)):
            raise ObstructionUndecidedError(
                "stable limit does not match any root of the specialization"
            )
        others = sorted(abs(r - nearest) for r in roots if r is not nearest)
        sep_small = bool(others) and others[0] < 1e-5 * (1.0 + abs(nearest))
        ptv = abs(complex(b.P.derivative_t().eval(m, complex(nearest))))
        pt_scale = (
            tracker.deg
            * tracker.height
            * (1.0 + abs(nearest)) ** max(tracker.deg - 1, 0)
            * (1.0 + abs(m)) ** max((u.degree for u in b.P.tcoeffs), default=0)
        )
        near_multiple = sep_small or ptv < _CRITICAL_REL * pt_scale

    if not near_multiple:
        return False
    return _monodromy_nontrivial(tracker, m, delta0, first, t_first, cfg)


def _stage_point(center: complex, delta: float) -> complex:
    u = center / abs(center)
    return center - delta * u


def _extrapolate_limit(values) -> complex:
    """Aitken-style limit of the stage values; the measured difference
    ratio absorbs both analytic (delta) and ramified (sqrt delta) decay."""
    v1, v2, v3 = values[-3:]
    d1, d2 = v2 - v1, v3 - v2
    tiny = 1e-13 * (1.0 + abs(v3))
    if abs(d1) < tiny or abs(d2) < tiny:
        return v3
    q = d2 / d1
    if abs(q) >= 0.95:
        return v3
    return v3 + d2 * q / (1 - q)


def _all_growing(values) -> bool:
    if len(values) < 2:
        return False
    for a, b in zip(values, values[1:]):
        if abs(b) < _GROWTH_RATIO * max(abs(a), 1e-300):
            return False
    return True


def _monodromy_nontrivial(tracker, m, delta, x0, t0_val, cfg, turns=1) -> bool:
    """Track around the candidate and compare against the start value."""
    v_start = complex(t0_val)
    roots = tracker._roots_at(x0)
    others = sorted(abs(r - v_start) for r in roots)[1:]
    if not others:
        return False  # a single finite branch cannot permute
    sep = others[0]
    if sep < 100 * cfg.newton_tol * (1.0 + abs(v_start)):
        raise ObstructionUndecidedError(
            "branch separation at the loop base is below resolution"
        )
    phi0 = cmath.phase(x0 - m)
    pts = [
        m + delta * cmath.exp(1j * (phi0 + 2 * math.pi * j / 16))
        for j in range(16 * turns + 1)
    ]
    t = t0_val
    try:
        for a, bpt in zip(pts, pts[1:]):
            t = tracker.run_segment(t, a, bpt)
    except TrackingFailedError as exc:
        raise ObstructionUndecidedError(f"monodromy loop failed: {exc}") from exc
    moved = abs(complex(t) - v_start)
    return bool(moved > 0.5 * sep)
