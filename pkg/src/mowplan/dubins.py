"""Shortest bounded-curvature paths between poses, plus the detour builders
used by the online planners.

All arcs turn at exactly the minimum radius. Word letters: L = CCW arc,
R = CW arc, S = straight. Construction is done with turning-circle geometry
(tangent lines between circles) rather than table lookups, which keeps every
intermediate quantity inspectable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geom import CCW, CW, Arc, Line, PathPlan, Pose, line_from_pose, mod2pi

# Feasibility slack for exactly-tangent turning circles.
_TANGENT_TOL = 1e-9

WORDS = ("LSL", "RSR", "LSR", "RSL", "RLR", "LRL")

_DIR = {"L": CCW, "R": CW}


def _turn_center(pose: Pose, radius: float, direction: int):
    # CCW center sits 90 deg left of the heading, CW center 90 deg right.
    return (
        pose.x - direction * radius * math.sin(pose.theta),
        pose.y + direction * radius * math.cos(pose.theta),
    )


def _sweep(direction: int, from_heading: float, to_heading: float) -> float:
    return mod2pi(direction * (to_heading - from_heading))


def _csc_params(start: Pose, goal: Pose, radius: float, word: str):
    """(t, s_len, q) for a CSC word, or None if infeasible.

    t and q are arc sweeps in radians, s_len is the straight length in meters.
    """
    d1 = _DIR[word[0]]
    d2 = _DIR[word[2]]
    c1x, c1y = _turn_center(start, radius, d1)
    c2x, c2y = _turn_center(goal, radius, d2)
    vx, vy = c2x - c1x, c2y - c1y
    dist = math.hypot(vx, vy)

    if d1 == d2:
        if dist < 1e-12:
            # Same turning circle: a single arc does it.
            return _sweep(d1, start.theta, goal.theta), 0.0, 0.0
        h = math.atan2(vy, vx)
        s_len = dist
    else:
        # Inner tangent exists only when the circles are >= 2R apart.
        if dist < 2.0 * radius - _TANGENT_TOL:
            return None
        ratio = min(2.0 * radius / dist, 1.0)
        if ratio >= 1.0 - 1e-14:
            # Tangent circles. asin noise blows up as sqrt(eps) here, so
            # pin the junction heading and collapse the straight run.
            h = math.atan2(vy, vx) + d1 * (math.pi / 2.0)
            s_len = 0.0
        else:
            h = math.atan2(vy, vx) + d1 * math.asin(ratio)
            s_len = math.sqrt(max(dist * dist - 4.0 * radius * radius, 0.0))
    t = _sweep(d1, start.theta, h)
    q = _sweep(d2, h, goal.theta)
    return t, s_len, q


def _ccc_params(start: Pose, goal: Pose, radius: float, word: str):
    """(t, p, q) arc sweeps for a CCC word, or None if infeasible.

    Two mirror placements of the middle circle can exist; the shorter
    realization is returned.
    """
    d1 = _DIR[word[0]]
    dm = -d1
    c1x, c1y = _turn_center(start, radius, d1)
    c3x, c3y = _turn_center(goal, radius, d1)
    vx, vy = c3x - c1x, c3y - c1y
    dist = math.hypot(vx, vy)
    if dist < 1e-12 or dist > 4.0 * radius + _TANGENT_TOL:
        return None
    half = dist / 2.0
    height = math.sqrt(max(4.0 * radius * radius - half * half, 0.0))
    mx, my = (c1x + c3x) / 2.0, (c1y + c3y) / 2.0
    ux, uy = -vy / dist, vx / dist

    best = None
    for side in (1.0, -1.0):
        cmx = mx + side * height * ux
        cmy = my + side * height * uy
        j1x, j1y = (c1x + cmx) / 2.0, (c1y + cmy) / 2.0
        j2x, j2y = (cmx + c3x) / 2.0, (cmy + c3y) / 2.0
        # Headings at the junctions follow the first/last circles' direction.
        h1 = mod2pi(math.atan2(j1y - c1y, j1x - c1x) + d1 * (math.pi / 2.0))
        h2 = mod2pi(math.atan2(j2y - c3y, j2x - c3x) + d1 * (math.pi / 2.0))
        t = _sweep(d1, start.theta, h1)
        p = _sweep(dm, h1, h2)
        q = _sweep(d1, h2, goal.theta)
        total = t + p + q
        if best is None or total < best[0]:
            best = (total, t, p, q)
    return best[1], best[2], best[3]


def _realize(start: Pose, radius: float, word: str, params) -> PathPlan:
    """Walk the word letters from the start pose, emitting one segment per
    letter. Degenerate pieces (zero straight run, zero sweep) are kept so
    every realized word has uniform three-segment structure."""
    segments = []
    pose = start
    for letter, value in zip(word, params):
        if letter == "S":
            seg = line_from_pose(pose, value)
        else:
            d = _DIR[letter]
            cx, cy = _turn_center(pose, radius, d)
            seg = Arc(cx, cy, radius, d, math.atan2(pose.y - cy, pose.x - cx), value)
        segments.append(seg)
        pose = seg.end
    return PathPlan(segments)


def _word_params(start: Pose, goal: Pose, radius: float, word: str):
    if word[1] == "S":
        return _csc_params(start, goal, radius, word)
    return _ccc_params(start, goal, radius, word)


def _params_length(radius: float, word: str, params) -> float:
    t, mid, q = params
    mid_len = mid if word[1] == "S" else radius * mid
    return radius * (t + q) + mid_len


def _check_endpoint(plan: PathPlan, goal: Pose) -> None:
    end = plan.end_pose
    err = end.distance_to(goal)
    if err > 1e-6:
        raise ArithmeticError(f"path endpoint off by {err:.3e}")


def dubins_shortest(start: Pose, goal: Pose, radius: float) -> PathPlan:
    """Shortest path among all six words. Exact length ties resolve to the
    earlier word in LSL, RSR, LSR, RSL, RLR, LRL order."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    best = None
    for word in WORDS:
        params = _word_params(start, goal, radius, word)
        if params is None:
            continue
        length = _params_length(radius, word, params)
        if best is None or length < best[0]:
            best = (length, word, params)
    if best is None:
        raise ArithmeticError("no dubins word feasible")
    plan = _realize(start, radius, best[1], best[2])
    _check_endpoint(plan, goal)
    return plan


def csc_constrained(start: Pose, goal: Pose, word: str, radius: float) -> Optional[PathPlan]:
    """The unique LSR or RSL connection, or None when the two turning
    circles are closer than 2R (no inner tangent)."""
    if word not in ("LSR", "RSL"):
        raise ValueError("word must be LSR or RSL")
    if radius <= 0:
        raise ValueError("radius must be positive")
    params = _csc_params(start, goal, radius, word)
    if params is None:
        return None
    plan = _realize(start, radius, word, params)
    _check_endpoint(plan, goal)
    return plan


@dataclass
class Jump:
    """Detour off a pass: an up-path to the weed and a down-path back onto
    the pass, both ending with the pass heading."""

    x_start: float
    x_end: float
    weed_x: float
    weed_y: float
    up_path: PathPlan
    down_path: PathPlan

    @property
    def length(self) -> float:
        return self.up_path.length + self.down_path.length


def jump_offset(dy, radius):
    """Horizontal half-span of a jump detour over a weed dy above the pass.

    Tangent-circle geometry gives sqrt(4R^2 - (dy - 2R)^2) while the entry
    and exit circles can touch (dy < 4R); beyond that the detour climbs
    straight over the weed and the span collapses to zero. Accepts scalars
    or arrays.
    """
    dy = np.asarray(dy, dtype=float)
    d = dy - 2.0 * radius
    inside = np.maximum(4.0 * radius * radius - d * d, 0.0)
    out = np.where(dy >= 4.0 * radius, 0.0, np.sqrt(inside))
    if out.ndim == 0:
        return float(out)
    return out


def build_jump(
    weed_x: float,
    weed_y: float,
    pass_y: float,
    pass_heading: float,
    radius: float,
) -> Optional[Jump]:
    """Construct the detour that leaves the pass, passes exactly over the
    weed with the pass heading, and returns to the pass.

    The entry point is placed so the entry turning circle and the weed's
    exit turning circle are tangent; the exit point mirrors the entry around
    the weed. Above 4R of climb the circles cannot touch and the detour
    goes straight up/down over the weed. Returns None when the weed is not
    above the pass.
    """
    dy = weed_y - pass_y
    if dy <= 0:
        return None
    forward = 1.0 if math.cos(pass_heading) > 0 else -1.0
    offset = jump_offset(dy, radius)
    x_start = weed_x - forward * offset
    x_end = weed_x + forward * offset
    up_word, down_word = ("LSR", "RSL") if forward > 0 else ("RSL", "LSR")
    weed_pose = Pose(weed_x, weed_y, pass_heading)
    up = csc_constrained(Pose(x_start, pass_y, pass_heading), weed_pose, up_word, radius)
    down = csc_constrained(weed_pose, Pose(x_end, pass_y, pass_heading), down_word, radius)
    if up is None or down is None:
        return None
    return Jump(x_start, x_end, weed_x, weed_y, up, down)
