"""Planar path primitives: poses, circular arcs, line segments, piecewise paths.

Angles are radians normalized to [0, 2pi). Arcs carry a nonnegative sweep and
an explicit direction, so zero-length segments remain representable and no
sign conventions hide inside the sweep value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

CCW = 1
CW = -1

# Positions/headings are considered continuous when they agree to this.
JOINT_TOL = 1e-9


def mod2pi(angle: float) -> float:
    """Normalize an angle to [0, 2pi); values within 1e-12 of 2pi wrap to 0."""
    a = angle % TWO_PI
    if TWO_PI - a < 1e-12:
        return 0.0
    return a


def ang_diff(a: float, b: float) -> float:
    """Smallest absolute difference between two angles."""
    d = mod2pi(a - b)
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", mod2pi(self.theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta])

    def distance_to(self, other: "Pose") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Arc:
    """Circular arc at fixed radius.

    start_angle is the position angle of the entry point on the circle;
    the arc covers `sweep` radians in `direction` (CCW=+1, CW=-1).
    """

    cx: float
    cy: float
    radius: float
    direction: int
    start_angle: float
    sweep: float

    def __post_init__(self):
        if self.direction not in (CCW, CW):
            raise ValueError("direction must be CCW (+1) or CW (-1)")
        if self.sweep < 0:
            raise ValueError("sweep must be nonnegative")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "start_angle", mod2pi(self.start_angle))

    @property
    def length(self) -> float:
        return self.radius * self.sweep

    def pose_at(self, s: float) -> Pose:
        phi = self.start_angle + self.direction * (s / self.radius)
        return Pose(
            self.cx + self.radius * math.cos(phi),
            self.cy + self.radius * math.sin(phi),
            phi + self.direction * (math.pi / 2.0),
        )

    @property
    def start(self) -> Pose:
        return self.pose_at(0.0)

    @property
    def end(self) -> Pose:
        return self.pose_at(self.length)


@dataclass(frozen=True)
class Line:
    x0: float
    y0: float
    x1: float
    y1: float
    # Degenerate (zero-length) lines appear as collapsed straight runs in
    # three-segment words; an explicit heading keeps them G1-meaningful.
    theta: float = None

    def __post_init__(self):
        if self.theta is None:
            if self.length < 1e-15:
                object.__setattr__(self, "theta", 0.0)
            else:
                object.__setattr__(
                    self,
                    "theta",
                    mod2pi(math.atan2(self.y1 - self.y0, self.x1 - self.x0)),
                )
        else:
            object.__setattr__(self, "theta", mod2pi(self.theta))

    @property
    def length(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    @property
    def heading(self) -> float:
        return self.theta

    def pose_at(self, s: float) -> Pose:
        n = self.length
        f = 0.0 if n < 1e-15 else s / n
        return Pose(
            self.x0 + f * (self.x1 - self.x0),
            self.y0 + f * (self.y1 - self.y0),
            self.theta,
        )

    @property
    def start(self) -> Pose:
        return self.pose_at(0.0)

    @property
    def end(self) -> Pose:
        return self.pose_at(self.length)


def line_from_pose(pose: Pose, length: float) -> Line:
    """Straight segment of given length starting at a pose, along its heading."""
    return Line(
        pose.x,
        pose.y,
        pose.x + length * math.cos(pose.theta),
        pose.y + length * math.sin(pose.theta),
        pose.theta,
    )


@dataclass
class PathPlan:
    """Ordered arc/line segments forming a G1-continuous path."""

    segments: list

    @property
    def length(self) -> float:
        return sum(seg.length for seg in self.segments)

    @property
    def start_pose(self) -> Pose:
        return self.segments[0].start

    @property
    def end_pose(self) -> Pose:
        return self.segments[-1].end

    def validate(self, tol: float = JOINT_TOL) -> None:
        """Check G1 continuity at every joint. Zero-length lines carry no
        meaningful heading, so heading continuity is only enforced across
        segments that have extent."""
        if not self.segments:
            raise ValueError("empty path")
        prev = None
        heading = None
        for seg in self.segments:
            if prev is not None and prev.distance_to(seg.start) > tol:
                raise ValueError(
                    f"position discontinuity {prev.distance_to(seg.start):.3e}"
                )
            if seg.length > tol:
                if heading is not None and ang_diff(heading, seg.start.theta) > tol:
                    raise ValueError(
                        f"heading discontinuity {ang_diff(heading, seg.start.theta):.3e}"
                    )
                heading = seg.end.theta
            prev = seg.end

    def pose_at(self, s: float) -> Pose:
        remaining = s
        for seg in self.segments:
            if remaining <= seg.length or seg is self.segments[-1]:
                return seg.pose_at(min(remaining, seg.length))
            remaining -= seg.length
        return self.end_pose


def concat_plans(plans) -> PathPlan:
    segs = []
    for p in plans:
        segs.extend(p.segments)
    return PathPlan(segs)


def plan_bounds(plan: PathPlan):
    """Axis-aligned bounding box of the continuous path.

    Exact, not sampled: arc extremes are found by testing which cardinal
    circle angles fall inside the swept range. Returns
    (xmin, ymin, xmax, ymax).
    """
    xs = []
    ys = []
    for seg in plan.segments:
        if isinstance(seg, Line):
            xs.extend((seg.x0, seg.x1))
            ys.extend((seg.y0, seg.y1))
            continue
        p0 = seg.pose_at(0.0)
        p1 = seg.pose_at(seg.length)
        xs.extend((p0.x, p1.x))
        ys.extend((p0.y, p1.y))
        for k in range(4):
            phi = k * (math.pi / 2.0)
            # Arc-parameter angle at which the cardinal direction is reached.
            delta = mod2pi(seg.direction * (phi - seg.start_angle))
            if delta <= seg.sweep + 1e-12:
                xs.append(seg.cx + seg.radius * math.cos(phi))
                ys.append(seg.cy + seg.radius * math.sin(phi))
    return min(xs), min(ys), max(xs), max(ys)


def sample_path(plan: PathPlan, ds: float) -> np.ndarray:
    """Sample a plan at exact arc-length spacing ds.

    Returns an (k, 3) array of (x, y, theta). The first row is the start
    pose; rows are ds apart in arc length except the last, which is the
    exact path endpoint.
    """
    if ds <= 0:
        raise ValueError("ds must be positive")
    total = plan.length
    m = int(math.floor(total / ds + 1e-12))
    s_vals = [i * ds for i in range(m + 1)]
    if total - s_vals[-1] > 1e-9:
        s_vals.append(total)
    else:
        s_vals[-1] = total

    out = np.empty((len(s_vals), 3))
    seg_iter = iter(plan.segments)
    seg = next(seg_iter)
    seg_start = 0.0
    for i, s in enumerate(s_vals):
        while s - seg_start > seg.length + 1e-12:
            seg_start += seg.length
            try:
                seg = next(seg_iter)
            except StopIteration:
                break
        p = seg.pose_at(min(max(s - seg_start, 0.0), seg.length))
        out[i, 0] = p.x
        out[i, 1] = p.y
        out[i, 2] = p.theta
    return out


def sample_steps(total_length: float, n_samples: int, ds: float) -> np.ndarray:
    """Arc-length increments between consecutive rows of sample_path output."""
    if n_samples <= 1:
        return np.empty(0)
    steps = np.full(n_samples - 1, ds)
    steps[-1] = total_length - (n_samples - 2) * ds
    return steps
