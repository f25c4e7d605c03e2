import math

import numpy as np
import pytest

from mowplan.geom import (
    CCW,
    CW,
    Arc,
    Line,
    PathPlan,
    Pose,
    ang_diff,
    line_from_pose,
    mod2pi,
    sample_path,
    sample_steps,
)


def test_mod2pi_range():
    for a in (-7.0, -math.pi, 0.0, 1.0, math.pi, 6.2, 100.0):
        m = mod2pi(a)
        assert 0.0 <= m < 2 * math.pi
    assert mod2pi(2 * math.pi) == 0.0
    assert mod2pi(-1e-15) == 0.0


def test_pose_normalizes_heading():
    p = Pose(0.0, 0.0, -math.pi / 2)
    assert abs(p.theta - 3 * math.pi / 2) < 1e-12


def test_arc_geometry():
    # Quarter CCW arc from (1,0) heading +y around origin.
    arc = Arc(0.0, 0.0, 1.0, CCW, 0.0, math.pi / 2)
    assert abs(arc.length - math.pi / 2) < 1e-12
    start = arc.start
    assert abs(start.x - 1.0) < 1e-12 and abs(start.y) < 1e-12
    assert abs(start.theta - math.pi / 2) < 1e-12
    end = arc.end
    assert abs(end.x) < 1e-12 and abs(end.y - 1.0) < 1e-12
    assert abs(end.theta - math.pi) < 1e-12


def test_arc_cw_heading():
    arc = Arc(0.0, 1.0, 1.0, CW, 3 * math.pi / 2, math.pi / 2)
    assert abs(arc.start.theta - math.pi) < 1e-12
    assert abs(ang_diff(arc.end.theta, math.pi / 2)) < 1e-12


def test_line_sampling():
    plan = PathPlan([Line(0.0, 0.0, 1.0, 0.0)])
    pts = sample_path(plan, 0.5)
    assert pts.shape == (3, 3)
    np.testing.assert_allclose(pts[:, 0], [0.0, 0.5, 1.0])
    np.testing.assert_allclose(pts[:, 1], 0.0, atol=1e-15)


def test_full_circle_sampling_closes():
    arc = Arc(0.0, 0.0, 1.0, CCW, 0.0, 2 * math.pi)
    pts = sample_path(PathPlan([arc]), 0.1)
    assert np.hypot(pts[-1, 0] - pts[0, 0], pts[-1, 1] - pts[0, 1]) < 1e-9


def test_sample_spacing_and_endpoint():
    plan = PathPlan(
        [
            Line(0.0, 0.0, 2.0, 0.0),
            Arc(2.0, 1.0, 1.0, CCW, 3 * math.pi / 2, math.pi / 2),
        ]
    )
    plan.validate()
    ds = 0.3
    pts = sample_path(plan, ds)
    gaps = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))
    assert np.all(gaps <= ds + 1e-9)
    end = plan.end_pose
    assert abs(pts[-1, 0] - end.x) < 1e-12
    assert abs(pts[-1, 1] - end.y) < 1e-12
    steps = sample_steps(plan.length, len(pts), ds)
    assert abs(steps.sum() - plan.length) < 1e-9
    # Chord lengths never exceed the arc-length increments.
    assert np.all(gaps <= steps + 1e-12)


def test_polyline_length_close_to_analytic():
    rng = np.random.default_rng(7)
    for _ in range(20):
        segs = []
        pose = Pose(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0, 2 * math.pi))
        for _ in range(4):
            if rng.random() < 0.5:
                seg = line_from_pose(pose, rng.uniform(0.0, 4.0))
            else:
                d = CCW if rng.random() < 0.5 else CW
                r = rng.uniform(0.5, 3.0)
                cx = pose.x - d * r * math.sin(pose.theta)
                cy = pose.y + d * r * math.cos(pose.theta)
                seg = Arc(cx, cy, r, d, math.atan2(pose.y - cy, pose.x - cx), rng.uniform(0, math.pi))
            segs.append(seg)
            pose = seg.end
        plan = PathPlan(segs)
        plan.validate()
        ds = 0.05
        pts = sample_path(plan, ds)
        poly = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1])).sum()
        assert poly <= plan.length + 1e-9
        assert plan.length - poly < ds


def test_validate_rejects_discontinuity():
    plan = PathPlan([Line(0.0, 0.0, 1.0, 0.0), Line(2.0, 0.0, 3.0, 0.0)])
    with pytest.raises(ValueError):
        plan.validate()


def test_zero_length_plan():
    plan = PathPlan([Line(1.0, 1.0, 1.0, 1.0)])
    assert plan.length == 0.0
    pts = sample_path(plan, 0.1)
    assert pts.shape[0] == 1
