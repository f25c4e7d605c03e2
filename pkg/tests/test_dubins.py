import math

import numpy as np
import pytest

from mowplan.dubins import WORDS, _word_params, _params_length, build_jump, csc_constrained, dubins_shortest
from mowplan.geom import Pose, ang_diff, sample_path

import oracles


def test_straight_line():
    plan = dubins_shortest(Pose(0, 0, 0), Pose(5, 0, 0), 1.0)
    assert abs(plan.length - 5.0) < 1e-12


def test_left_semicircle():
    plan = dubins_shortest(Pose(0, 0, 0), Pose(0, 2, math.pi), 1.0)
    assert abs(plan.length - math.pi) < 1e-12


def test_same_pose_zero_length():
    plan = dubins_shortest(Pose(1, 2, 0.7), Pose(1, 2, 0.7), 1.0)
    assert plan.length < 1e-12


def test_specific_pair_matches_reference():
    start, goal = Pose(0, 0, 0), Pose(3.1, -1.7, 2.0)
    plan = dubins_shortest(start, goal, 1.0)
    ref = oracles.shortest_length((0, 0, 0), (3.1, -1.7, 2.0), 1.0)
    assert abs(plan.length - ref) < 1e-6


def test_csc_tangent_case():
    plan = csc_constrained(Pose(0, 0, 0), Pose(2, 2, 0), "LSR", 1.0)
    assert plan is not None
    assert abs(plan.length - math.pi) < 1e-9
    # Tangent circles: two quarter arcs joined by a zero-length straight.
    lengths = [seg.length for seg in plan.segments]
    assert len(lengths) == 3
    assert abs(lengths[0] - math.pi / 2) < 1e-9
    assert abs(lengths[1]) < 1e-12
    assert abs(lengths[2] - math.pi / 2) < 1e-9


def test_csc_infeasible_when_circles_close():
    assert csc_constrained(Pose(0, 0, 0), Pose(0.5, 0.2, 0), "LSR", 1.0) is None


def test_csc_matches_reference():
    start, goal = Pose(0, 0, 0), Pose(4, 2, 0)
    plan = csc_constrained(start, goal, "LSR", 1.0)
    ref = oracles.word_length((0, 0, 0), (4, 2, 0), 1.0, "LSR")
    assert plan is not None and ref is not None
    assert abs(plan.length - ref) < 1e-6


def _random_pose(rng, span=10.0):
    return (
        rng.uniform(-span, span),
        rng.uniform(-span, span),
        rng.uniform(0.0, 2 * math.pi),
    )


def test_shortest_matches_reference_on_random_pairs():
    rng = np.random.default_rng(42)
    for trial in range(300):
        radius = rng.choice([0.5, 1.0, 2.0])
        s = _random_pose(rng)
        g = _random_pose(rng)
        plan = dubins_shortest(Pose(*s), Pose(*g), radius)
        ref = oracles.shortest_length(s, g, radius)
        assert ref is not None
        assert abs(plan.length - ref) < 1e-6, (s, g, radius)


def test_word_params_match_reference_per_word():
    rng = np.random.default_rng(9)
    for trial in range(120):
        radius = rng.choice([0.7, 1.0, 1.6])
        s = _random_pose(rng, span=6.0)
        g = _random_pose(rng, span=6.0)
        for word in WORDS:
            params = _word_params(Pose(*s), Pose(*g), radius, word)
            ref = oracles.word_length(s, g, radius, word)
            if params is None:
                assert ref is None
                continue
            got = _params_length(radius, word, params)
            if ref is not None:
                assert got >= ref - 1e-6
                if word[1] == "S":
                    # CSC realizations are unique, so lengths must agree.
                    assert abs(got - ref) < 1e-6, (word, s, g, radius)


def test_plans_are_continuous_and_curvature_bounded():
    rng = np.random.default_rng(123)
    for trial in range(50):
        radius = rng.choice([0.5, 1.0, 2.0])
        plan = dubins_shortest(Pose(*_random_pose(rng)), Pose(*_random_pose(rng)), radius)
        plan.validate()
        for seg in plan.segments:
            if hasattr(seg, "radius"):
                assert seg.radius >= radius - 1e-12
        pts = sample_path(plan, 0.05)
        # Heading change per step bounded by ds / R.
        dth = np.array([ang_diff(a, b) for a, b in zip(pts[1:, 2], pts[:-1, 2])])
        assert np.all(dth <= 0.05 / radius + 1e-9)


def test_jump_tangent_case():
    jump = build_jump(10.0, 7.0, 5.0, 0.0, 1.0)
    assert jump is not None
    assert abs(jump.x_start - 8.0) < 1e-12
    assert abs(jump.x_end - 12.0) < 1e-12
    assert abs(jump.length - 2 * math.pi) < 1e-9


def test_jump_vertical_keyhole():
    jump = build_jump(10.0, 9.0, 5.0, 0.0, 1.0)
    assert jump is not None
    assert abs(jump.x_start - 10.0) < 1e-12
    assert abs(jump.x_end - 10.0) < 1e-12
    assert abs(jump.up_path.length - 2 * math.pi) < 1e-9


def test_jump_requires_weed_above_pass():
    assert build_jump(10.0, 4.0, 5.0, 0.0, 1.0) is None


def test_jump_scales_with_radius():
    # Tangent case at R=2: climb of 2R=4 puts entry/exit 2R away laterally.
    jump = build_jump(30.0, 14.0, 10.0, 0.0, 2.0)
    assert jump is not None
    assert abs(jump.x_start - 26.0) < 1e-12
    assert abs(jump.x_end - 34.0) < 1e-12
    assert abs(jump.length - 4 * math.pi) < 1e-9


def test_jump_mirrored_heading():
    jump = build_jump(10.0, 7.0, 5.0, math.pi, 1.0)
    assert jump is not None
    assert abs(jump.x_start - 12.0) < 1e-12
    assert abs(jump.x_end - 8.0) < 1e-12
    assert abs(jump.length - 2 * math.pi) < 1e-9
    # Up-path ends exactly on the weed with the pass heading.
    end = jump.up_path.end_pose
    assert abs(end.x - 10.0) < 1e-9 and abs(end.y - 7.0) < 1e-9
    assert ang_diff(end.theta, math.pi) < 1e-9


def test_jump_above_four_radii_goes_straight_up():
    jump = build_jump(10.0, 11.0, 5.0, 0.0, 1.0)
    assert jump is not None
    assert abs(jump.x_start - 10.0) < 1e-12
    straight = [seg for seg in jump.up_path.segments if not hasattr(seg, "radius")]
    assert any(seg.length > 1.0 for seg in straight)


def test_jump_stays_between_pass_and_weed():
    rng = np.random.default_rng(5)
    for _ in range(40):
        radius = rng.choice([1.0, 2.0])
        y_p = 5.0
        dy = rng.uniform(1.1, 4.5 * radius)
        x_w = rng.uniform(20.0, 40.0)
        jump = build_jump(x_w, y_p + dy, y_p, 0.0, radius)
        assert jump is not None
        for plan in (jump.up_path, jump.down_path):
            pts = sample_path(plan, 0.02)
            assert pts[:, 1].min() >= y_p - 1e-9
            assert pts[:, 1].max() <= y_p + dy + 1e-9
