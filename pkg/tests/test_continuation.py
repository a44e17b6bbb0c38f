import math
from fractions import Fraction

import pytest

from convrad.branch import validate_branch
from convrad.continuation import (
    Path,
    TrackDiagnostics,
    TrackerConfig,
    is_obstructing,
    plan_path,
    track_root,
)
from convrad.exactpoly import BiPoly, UniPoly
from convrad.singularities import build_candidate_set


def bp(*tcoeffs):
    return BiPoly([UniPoly(c) for c in tcoeffs])


EXAMPLE5 = bp([-1], [Fraction(2, 3), -1])
SQRT = bp([-1, 1], [], [1])
CATALAN = bp([1], [-1], [0, 1])
TWOBRANCH = bp([1], [Fraction(-3, 2), 2], [Fraction(1, 2), Fraction(-3, 2), 1])
CUBIC = bp([0, -1], [-3], [], [1])


class TestTrackRoot:
    def test_example5_closed_form(self):
        b = validate_branch(EXAMPLE5, Fraction(3, 2))
        v = track_root(b, Path.from_points([0, 1 / 3]))
        assert abs(v - 3.0) < 1e-8

    def test_sqrt_branch(self):
        b = validate_branch(SQRT, 1)
        v = track_root(b, Path.from_points([0, 3 / 4]))
        assert abs(v - 0.5) < 1e-8

    def test_degenerate_path(self):
        b = validate_branch(CATALAN, 1)
        v = track_root(b, Path.from_points([0, 0]))
        assert v == 1

    def test_path_must_start_at_origin(self):
        b = validate_branch(CATALAN, 1)
        with pytest.raises(ValueError):
            track_root(b, Path.from_points([0.1, 0.2]))

    def test_catalan_generating_function(self):
        b = validate_branch(CATALAN, 1)
        x = 0.2
        v = track_root(b, Path.from_points([0, x]))
        expected = (1 - math.sqrt(1 - 4 * x)) / (2 * x)
        assert abs(v - expected) < 1e-8

    def test_complex_detour_consistency(self):
        # path independence: detours above and below the real axis agree
        cfg = TrackerConfig()
        for P, t0, target in [(CATALAN, 1, 0.15), (CUBIC, 0, 1.0)]:
            b = validate_branch(P, t0)
            up = track_root(b, Path.from_points([0, target + 0.35j, target]), cfg)
            down = track_root(b, Path.from_points([0, target - 0.35j, target]), cfg)
            assert abs(up - down) <= 10 * cfg.newton_tol * (1 + abs(up))

    def test_residual_bound_along_path(self):
        cfg = TrackerConfig()
        b = validate_branch(CATALAN, 1)
        diag = TrackDiagnostics()
        track_root(b, Path.from_points([0, 0.2 + 0.1j, 0.1 - 0.2j]), cfg, diag)
        assert diag.accepted_steps > 0
        assert diag.max_residual <= cfg.newton_tol

    def test_high_precision_context(self):
        cfg = TrackerConfig(precision_bits=120)
        b = validate_branch(EXAMPLE5, Fraction(3, 2))
        v = track_root(b, Path.from_points([0, 1 / 3]), cfg)
        assert abs(complex(v) - 3.0) < 1e-12


class TestPlanPath:
    def test_detours_around_obstacle_on_segment(self):
        cs = build_candidate_set(TWOBRANCH)
        # route to just left of the box at 1: the box at 1/2 sits on the way
        path = plan_path(0.875, cs.boxes, avoid_radius=0.03125)
        assert len(path.waypoints) > 2
        assert path.clearance > 0

    def test_clear_route_stays_straight(self):
        cs = build_candidate_set(CUBIC)
        path = plan_path(1.5, cs.boxes, avoid_radius=0.25)
        assert len(path.waypoints) == 2


class TestIsObstructing:
    def test_catalan_obstructs_at_quarter(self):
        b = validate_branch(CATALAN, 1)
        cs = build_candidate_set(CATALAN)
        (mod, owners), = cs.moduli
        box = cs.boxes[owners[0]]
        others = [bx for i, bx in enumerate(cs.boxes) if i != owners[0]]
        assert is_obstructing(b, box, mod, other_boxes=others) is True

    def test_twobranch_candidate_half_is_regular(self):
        b = validate_branch(TWOBRANCH, 1)
        cs = build_candidate_set(TWOBRANCH)
        half, one = cs.moduli
        assert half[0].rational_value() == Fraction(1, 2)
        box = cs.boxes[half[1][0]]
        others = [bx for i, bx in enumerate(cs.boxes) if i != half[1][0]]
        assert is_obstructing(b, box, half[0], other_boxes=others) is False

    def test_example5_blowup(self):
        b = validate_branch(EXAMPLE5, Fraction(3, 2))
        cs = build_candidate_set(EXAMPLE5)
        (mod, owners), = cs.moduli
        box = cs.boxes[owners[0]]
        assert is_obstructing(b, box, mod, other_boxes=[]) is True

    def test_cubic_ramifies_at_two(self):
        b = validate_branch(CUBIC, 0)
        cs = build_candidate_set(CUBIC)
        (mod, owners) = cs.moduli[0]
        for i in owners:
            others = [bx for j, bx in enumerate(cs.boxes) if j != i]
            assert is_obstructing(b, cs.boxes[i], mod, other_boxes=others) is True

    def test_monodromy_double_loop_is_identity(self):
        # two loops around the Catalan branch point compose to the identity
        from convrad.continuation import _monodromy_nontrivial, _Tracker, _stage_point

        cfg = TrackerConfig()
        b = validate_branch(CATALAN, 1)
        cs = build_candidate_set(CATALAN)
        box = [bx for bx in cs.boxes if bx.re_lo > 0][0]
        m = box.center_complex()
        delta0 = abs(m) / 4
        tracker = _Tracker(b.P, cfg)
        x0 = _stage_point(m, delta0)
        t = tracker._num(complex(b.t0))
        t = tracker.run_segment(t, 0j, x0)
        assert _monodromy_nontrivial(tracker, m, delta0, x0, t, cfg, turns=1) is True
        assert _monodromy_nontrivial(tracker, m, delta0, x0, t, cfg, turns=2) is False
