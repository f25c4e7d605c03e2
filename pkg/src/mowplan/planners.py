"""Online coverage planners for the pasture mowing problem.

All planners share the same episode shape: drive stripe passes across the
pasture, react to weeds the sensor reveals, and pick the next pass height
from what is still known to be standing. They differ in how a pass reacts
to a weed (detour over it now, or let a later pass handle it) and in how
aggressively the pass ladder climbs.

Two baselines bracket them: an exhaustive boustrophedon sweep at implement
spacing (the reference every run is scored against) and a random-walk
chaser with the same path budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .dubins import Jump, build_jump, csc_constrained, dubins_shortest, jump_offset
from .geom import Line, PathPlan, Pose, concat_plans, mod2pi, plan_bounds, sample_path
from .tsp import heuristic_tour
from .world import (
    DetectedWeed,
    MowerSpec,
    PastureSpec,
    Weed,
    WorldState,
    advance,
    advance_block,
)

# Acceptance slack for float comparisons on pass heights and boundaries.
_TOL = 1e-9
# Half-open detour trigger window, one sample step wide. The pose grid
# advances in exact step_ds increments, so [-tol, ds - tol) is crossed by
# exactly one grid pose per trigger point.
_WINDOW_TOL = 1e-9


class PlannerKind(str, Enum):
    BCP = "BCP"
    BCP_TSP = "BCP_TSP"
    REACT = "REACT"
    JUMP_HIGH = "JUMP_HIGH"
    JUMP_LOW = "JUMP_LOW"
    SNAKE_STATIC = "SNAKE_STATIC"
    SNAKE_STATIC_LIMITED = "SNAKE_STATIC_LIMITED"
    SNAKE_DYNAMIC = "SNAKE_DYNAMIC"


class ConstraintMode(str, Enum):
    """Which weed subset a pass considers actionable."""

    C = "C"
    F = "F"
    F_PRIME = "F_PRIME"


class PassMode(str, Enum):
    ON_TRANSIT = "on_transit"
    ON_PASS = "on_pass"
    ON_JUMP = "on_jump"
    ON_WRIGGLE = "on_wriggle"


@dataclass
class PassState:
    y_p: float
    theta_p: float
    pass_index: int = 0
    mode: PassMode = PassMode.ON_PASS


@dataclass(frozen=True)
class RunStats:
    planner: str
    path_length_m: float
    bcp_length_m: float
    pct_of_bcp: float
    weeds_detected_pct: float
    weeds_mowed_pct: float
    passes: int
    invariant_checks: int


class PlannerAbort(RuntimeError):
    """Episode exceeded its runaway guard; the run is recorded as failed."""


class InvariantViolation(RuntimeError):
    """A planner correctness invariant failed at a pass boundary."""


def _forward(theta_p: float) -> float:
    return 1.0 if math.cos(theta_p) > 0.0 else -1.0


def _detected_unmowed(world: WorldState) -> np.ndarray:
    return np.flatnonzero(world.weed_status == 1)


def _candidate_indices(
    world: WorldState,
    y_p: float,
    theta_p: float,
    mode: ConstraintMode,
    spec: MowerSpec,
) -> np.ndarray:
    """Indices of detected, unmowed weeds actionable from the current pose.

    All bounds are strict: a weed exactly on the implement edge belongs to
    the pass itself, and one exactly at the reach limit is unreachable.
    """
    idx = _detected_unmowed(world)
    if idx.size == 0:
        return idx
    x = world.weed_x[idx]
    y = world.weed_y[idx]
    fwd = _forward(theta_p)
    half_b = spec.implement_width / 2.0
    half_sw = spec.fov_width / 2.0
    m = fwd * (x - world.mower.x) > 0.0
    if mode == ConstraintMode.C:
        m &= (y > y_p + half_b) & (y < y_p + half_sw)
    elif mode == ConstraintMode.F:
        m &= y < y_p + half_sw
    elif mode == ConstraintMode.F_PRIME:
        m &= (y < y_p + half_sw) & (y > y_p - 1.5 * spec.fov_width)
    else:
        raise ValueError(f"unknown constraint mode {mode!r}")
    return idx[m]


def candidate_weeds(
    world: WorldState,
    state: PassState,
    mode: ConstraintMode,
    spec: MowerSpec,
) -> list:
    idx = _candidate_indices(world, state.y_p, state.theta_p, ConstraintMode(mode), spec)
    return [
        Weed(
            int(world.weed_id[i]),
            float(world.weed_x[i]),
            float(world.weed_y[i]),
            int(world.weed_status[i]),
        )
        for i in idx
    ]


def find_available_jump(
    world: WorldState,
    state: PassState,
    spec: MowerSpec,
    pasture: PastureSpec,
) -> Optional[Jump]:
    """Detour over a reachable weed, triggered exactly once per weed.

    A jump over candidate weed w leaves the pass at x_s and lands at x_e,
    both fixed by tangency geometry. It is taken when:

      1. the mower is within one sample step before x_s,
      2. the landing point is still inside sensed ground (x_e ahead of the
         mower by strictly less than the sensing depth), and
      3. no other known weed stands on the pass stripe strictly between
         x_s and x_e (it would be skipped over and stranded behind the
         mower). The stripe test is closed with a hair of slack so weeds
         exactly on the stripe edge still block the detour.

    Both endpoints must lie inside the pasture. Ties pick the lowest weed,
    then the lowest x.
    """
    y_p, theta_p = state.y_p, state.theta_p
    cand = _candidate_indices(world, y_p, theta_p, ConstraintMode.C, spec)
    if cand.size == 0:
        return None
    fwd = _forward(theta_p)
    x_m = world.mower.x
    wx = world.weed_x[cand]
    wy = world.weed_y[cand]
    off = jump_offset(wy - y_p, spec.turn_radius)
    xs = wx - fwd * off
    xe = wx + fwd * off
    o = fwd * (xs - x_m)
    feas = (o >= -_WINDOW_TOL) & (o < spec.step_ds - _WINDOW_TOL)
    feas &= fwd * (xe - x_m) < spec.fov_depth
    feas &= np.minimum(xs, xe) >= -_TOL
    feas &= np.maximum(xs, xe) <= pasture.length + _TOL
    if not feas.any():
        return None

    others = np.setdiff1d(_detected_unmowed(world), cand, assume_unique=True)
    ox = world.weed_x[others]
    oy = world.weed_y[others]
    half_b = spec.implement_width / 2.0
    ylo = y_p - half_b - _TOL
    yhi = y_p + half_b + _TOL

    fi = np.flatnonzero(feas)
    fi = fi[np.lexsort((wx[fi], wy[fi]))]
    for i in fi:
        lo, hi = (xs[i], xe[i]) if xs[i] <= xe[i] else (xe[i], xs[i])
        if np.any((ox > lo) & (ox < hi) & (oy >= ylo) & (oy <= yhi)):
            continue
        jump = build_jump(float(wx[i]), float(wy[i]), y_p, theta_p, spec.turn_radius)
        if jump is None:
            continue
        return jump
    return None


def _wriggle_plan(
    world: WorldState,
    theta_p: float,
    cand: np.ndarray,
    spec: MowerSpec,
    pasture: PastureSpec,
) -> Optional[PathPlan]:
    """First valid in-pass detour to a candidate weed, nearest in x first.

    The detour word is fixed by which side of the mower the weed sits on
    (first turn toward it), must exist geometrically, and must stay inside
    the pasture proper.
    """
    if cand.size == 0:
        return None
    pose = world.mower
    fwd = _forward(theta_p)
    order = np.argsort(np.abs(world.weed_x[cand] - pose.x), kind="stable")
    for i in cand[order]:
        wx = float(world.weed_x[i])
        wy = float(world.weed_y[i])
        above = wy >= pose.y
        if fwd > 0:
            word = "LSR" if above else "RSL"
        else:
            word = "RSL" if above else "LSR"
        plan = csc_constrained(pose, Pose(wx, wy, theta_p), word, spec.turn_radius)
        if plan is None:
            continue
        xmin, ymin, xmax, ymax = plan_bounds(plan)
        if xmin < -_TOL or ymin < -_TOL:
            continue
        if xmax > pasture.length + _TOL or ymax > pasture.width + _TOL:
            continue
        return plan
    return None


def find_valid_subpath(
    world: WorldState,
    state: PassState,
    spec: MowerSpec,
    pasture: PastureSpec,
    limited: bool = False,
) -> Optional[PathPlan]:
    mode = ConstraintMode.F_PRIME if limited else ConstraintMode.F
    cand = _candidate_indices(world, state.y_p, state.theta_p, mode, spec)
    return _wriggle_plan(world, state.theta_p, cand, spec, pasture)


def next_pass_y(
    kind: PlannerKind,
    y_p: float,
    weed_ys: Sequence[float],
    pasture: PastureSpec,
    spec: MowerSpec,
) -> float:
    """Height of the next pass given the weeds still standing.

    The pass ladder never climbs past the point where known weeds would be
    left below the implement, never past the pasture-top pass, and never
    more than its planner-specific stride.
    """
    kind = PlannerKind(kind)
    half_b = spec.implement_width / 2.0
    half_sw = spec.fov_width / 2.0
    top = pasture.width - half_b
    ys = np.asarray(weed_ys, dtype=float)
    min_weed = float(ys.min()) + half_b if ys.size else math.inf
    if kind == PlannerKind.JUMP_LOW:
        stride = y_p + half_sw
    elif kind in (PlannerKind.JUMP_HIGH, PlannerKind.SNAKE_DYNAMIC):
        stride = y_p + half_sw + half_b
    elif kind in (PlannerKind.SNAKE_STATIC, PlannerKind.SNAKE_STATIC_LIMITED):
        return min(y_p + half_sw + half_b, top)
    else:
        raise ValueError(f"{kind.value} has no pass ladder")
    return min(min_weed, stride, top)


def is_terminated(
    kind: PlannerKind,
    world: WorldState,
    state: PassState,
    pasture: PastureSpec,
    spec: MowerSpec,
    bcp_length: Optional[float] = None,
) -> bool:
    """Evaluated at the end of a pass (REACT: after every step)."""
    kind = PlannerKind(kind)
    if kind == PlannerKind.REACT:
        if bcp_length is None:
            raise ValueError("REACT termination needs the reference length")
        return world.odometer >= bcp_length - _TOL
    top = pasture.width - spec.implement_width / 2.0
    at_top = state.y_p >= top - _TOL
    clean = _detected_unmowed(world).size == 0
    if kind in (PlannerKind.JUMP_HIGH, PlannerKind.JUMP_LOW, PlannerKind.SNAKE_DYNAMIC):
        return at_top and clean
    swept_top = world.mower.y >= pasture.width - spec.implement_width - _TOL
    if kind == PlannerKind.SNAKE_STATIC:
        return at_top and swept_top and clean
    if kind == PlannerKind.SNAKE_STATIC_LIMITED:
        return at_top and swept_top
    raise ValueError(f"{kind.value} has no pass termination test")


def build_bcp(pasture: PastureSpec, spacing: float, spec: MowerSpec) -> PathPlan:
    """Boustrophedon sweep at the given pass spacing.

    Passes sit at (i + 1/2) * spacing with the last one clamped down so it
    never overhangs the top edge; directions alternate and consecutive
    passes are joined by shortest bounded-curvature U-turns.
    """
    if spacing <= 0 or spacing > pasture.width + _TOL:
        raise ValueError("spacing must be in (0, width]")
    n = int(math.ceil(pasture.width / spacing - 1e-12))
    ys = [(i + 0.5) * spacing for i in range(n)]
    ys[-1] = min(ys[-1], pasture.width - spacing / 2.0)
    plans = []
    prev_end = None
    for k, y in enumerate(ys):
        th = 0.0 if k % 2 == 0 else math.pi
        x0, x1 = (0.0, pasture.length) if th == 0.0 else (pasture.length, 0.0)
        start = Pose(x0, y, th)
        if prev_end is not None:
            plans.append(dubins_shortest(prev_end, start, spec.turn_radius))
        plans.append(PathPlan([Line(x0, y, x1, y, theta=th)]))
        prev_end = Pose(x1, y, th)
    return concat_plans(plans)


def bcp_reference_length(pasture: PastureSpec, spec: MowerSpec) -> float:
    """Chord-integrated length of the implement-spacing sweep.

    Integration matches the episode odometer exactly (same sampling, same
    left-fold), so executing the sweep scores exactly 100 percent.
    """
    plan = build_bcp(pasture, spec.implement_width, spec)
    arr = sample_path(plan, spec.step_ds)
    chords = np.hypot(np.diff(arr[:, 0]), np.diff(arr[:, 1]))
    total = 0.0
    for v in chords:
        total += float(v)
    return total


def _jump_stop_index(
    world: WorldState,
    y_p: float,
    theta_p: float,
    spec: MowerSpec,
    pasture: PastureSpec,
    u: np.ndarray,
    j: int,
) -> int:
    """First grid index past j where some candidate's trigger window opens.

    Between trigger windows and detection events the jump search provably
    returns None, so the pass can be advanced in one block to this index.
    """
    k_last = len(u) - 1
    cand = _candidate_indices(world, y_p, theta_p, ConstraintMode.C, spec)
    if cand.size == 0:
        return k_last
    fwd = _forward(theta_p)
    wx = world.weed_x[cand]
    wy = world.weed_y[cand]
    off = jump_offset(wy - y_p, spec.turn_radius)
    xs = wx - fwd * off
    xe = wx + fwd * off
    ok = (np.minimum(xs, xe) >= -_TOL) & (np.maximum(xs, xe) <= pasture.length + _TOL)
    if not ok.any():
        return k_last
    us = fwd * xs[ok]
    idxs = np.searchsorted(u, us - spec.step_ds + _WINDOW_TOL, side="right")
    idxs = idxs[idxs > j]
    if idxs.size == 0:
        return k_last
    return min(int(idxs.min()), k_last)


def _sample_arrays(plan: PathPlan, ds: float):
    arr = sample_path(plan, ds)
    px = np.ascontiguousarray(arr[:, 0])
    py = np.ascontiguousarray(arr[:, 1])
    pth = np.ascontiguousarray(arr[:, 2])
    steps = np.zeros(len(px))
    if len(px) > 1:
        steps[1:] = np.hypot(np.diff(px), np.diff(py))
    return arr, px, py, pth, steps


class _Episode:
    """Shared episode driver: pose-block execution, logging, guards."""

    def __init__(self, kind, world, pasture, spec, seed):
        self.kind = kind
        self.world = world
        self.pasture = pasture
        self.spec = spec
        self.seed = seed
        self.bcp_ref = bcp_reference_length(pasture, spec)
        self.traj = [np.array([[world.mower.x, world.mower.y, world.mower.theta]])]
        self.detect_log: list[int] = []
        self.passes = 0
        self.invariant_checks = 0
        # Weeds already in view before the first move still count.
        self._log_events(advance(world, world.mower, spec, pasture))

    def _log_events(self, events):
        for e in events:
            if isinstance(e, DetectedWeed):
                self.detect_log.append(e.id)

    def _abort_check(self):
        if self.world.odometer > 5.0 * self.bcp_ref:
            raise PlannerAbort(
                f"{self.kind.value} exceeded 5x the reference sweep length "
                f"({self.world.odometer:.1f} m) without terminating"
            )

    def _exec(self, plan: PathPlan, watch=None, budget=None, arrive=None, stop_on_detect=False) -> str:
        """Execute a plan pose by pose. Returns why execution ended:
        'end', 'boundary' (watch crossing), 'budget', 'arrive', 'detect'.
        """
        if plan.length < 1e-12:
            return "end"
        arr, px, py, pth, steps = _sample_arrays(plan, self.spec.step_ds)
        k = len(px)
        jcap = k - 1
        reason = "end"
        if budget is not None:
            cums = np.add.accumulate(steps)
            m = int(np.searchsorted(cums, budget - _TOL - self.world.odometer, side="left"))
            if m < jcap:
                jcap, reason = m, "budget"
        if watch is not None:
            fwd, far_x = watch
            hits = np.flatnonzero(fwd * px >= fwd * far_x - 1e-12)
            if hits.size and hits[0] < jcap:
                jcap, reason = int(hits[0]), "boundary"
        if arrive is not None:
            (ax, ay), radius = arrive
            hits = np.flatnonzero(np.hypot(px - ax, py - ay) <= radius)
            if hits.size and hits[0] < jcap:
                jcap, reason = int(hits[0]), "arrive"
        if jcap == 0:
            return reason
        j = 0
        while j < jcap:
            stop, events = advance_block(
                self.world, px, py, pth, steps, j + 1, jcap + 1, self.spec
            )
            self.traj.append(arr[j + 1 : stop + 1])
            self._log_events(events)
            self._abort_check()
            j = stop
            if stop_on_detect and any(isinstance(e, DetectedWeed) for e in events):
                return "detect"
        return reason

    def _transit_to(self, target: Pose):
        pose = self.world.mower
        if (
            pose.distance_to(target) < _TOL
            and abs(mod2pi(pose.theta - target.theta + math.pi) - math.pi) < _TOL
        ):
            return
        self._exec(dubins_shortest(pose, target, self.spec.turn_radius))

    # -- pass-boundary invariants ------------------------------------

    def _inv_pass_start(self, snapshot: np.ndarray, y_p: float):
        """No weed known when this pass was committed may still stand below
        the ground the pass gives up."""
        self.invariant_checks += 1
        alive = snapshot[self.world.weed_status[snapshot] == 1]
        floor = y_p - self.spec.implement_width / 2.0 - _TOL
        low = alive[self.world.weed_y[alive] < floor]
        if low.size:
            i = int(low[0])
            raise InvariantViolation(
                f"pass {self.passes} at y={y_p:.3f} starts with unmowed weed "
                f"{int(self.world.weed_id[i])} at y={self.world.weed_y[i]:.3f}"
            )

    def _inv_pass_end(self, snapshot: np.ndarray, y_p: float):
        """Everything known at commit time below the swept stripe's top edge
        must be mowed once the pass is done."""
        self.invariant_checks += 1
        alive = snapshot[self.world.weed_status[snapshot] == 1]
        lid = y_p + self.spec.implement_width / 2.0 - _TOL
        low = alive[self.world.weed_y[alive] < lid]
        if low.size:
            i = int(low[0])
            raise InvariantViolation(
                f"pass {self.passes} at y={y_p:.3f} ended leaving weed "
                f"{int(self.world.weed_id[i])} at y={self.world.weed_y[i]:.3f} unmowed"
            )

    # -- jump planners -------------------------------------------------

    def _jump_pass(self, y_p: float, theta_p: float):
        spec, world, pasture = self.spec, self.world, self.pasture
        fwd = _forward(theta_p)
        far = pasture.length if fwd > 0 else 0.0
        state = PassState(y_p, theta_p, self.passes, PassMode.ON_PASS)
        while True:
            x0 = world.mower.x
            if fwd * (far - x0) <= 1e-12:
                return
            plan = PathPlan([Line(x0, y_p, far, y_p, theta=theta_p)])
            arr, px, py, pth, steps = _sample_arrays(plan, spec.step_ds)
            u = fwd * px
            j = 0
            replanned = False
            while True:
                if j >= len(px) - 1:
                    return
                jump = find_available_jump(world, state, spec, pasture)
                if jump is not None:
                    self._exec_jump(jump, y_p, theta_p)
                    replanned = True
                    break
                nstop = _jump_stop_index(world, y_p, theta_p, spec, pasture, u, j)
                stop, events = advance_block(
                    world, px, py, pth, steps, j + 1, nstop + 1, spec
                )
                self.traj.append(arr[j + 1 : stop + 1])
                self._log_events(events)
                self._abort_check()
                j = stop
            if replanned:
                continue

    def _exec_jump(self, jump: Jump, y_p: float, theta_p: float):
        x_m = self.world.mower.x
        fwd = _forward(theta_p)
        # The connector runs as its own pose phase so a sample lands exactly
        # on the line-to-arc seam. A merged sample step would tilt its swept
        # quad with the arc and uncover the stripe edge right where
        # pass-height-defining weeds sit.
        if fwd * (jump.x_start - x_m) > 1e-12:
            self._exec(PathPlan([Line(x_m, y_p, jump.x_start, y_p, theta=theta_p)]))
        self._exec(concat_plans((jump.up_path, jump.down_path)))

    def _run_jump(self, kind: PlannerKind):
        spec, world, pasture = self.spec, self.world, self.pasture
        half_b = spec.implement_width / 2.0
        top = pasture.width - half_b
        y_p, theta_p = half_b, 0.0
        commit = _detected_unmowed(world)
        while True:
            start_x = 0.0 if _forward(theta_p) > 0 else pasture.length
            self._transit_to(Pose(start_x, y_p, theta_p))
            self._inv_pass_start(commit, y_p)
            self._jump_pass(y_p, theta_p)
            self._inv_pass_end(commit, y_p)
            state = PassState(y_p, theta_p, self.passes)
            self.passes += 1
            if is_terminated(kind, world, state, pasture, spec):
                return
            ys = world.weed_y[_detected_unmowed(world)]
            y_p = next_pass_y(kind, y_p, ys, pasture, spec)
            commit = _detected_unmowed(world)
            theta_p = mod2pi(math.pi - theta_p)

    # -- snake planners -------------------------------------------------

    def _snake_pass(self, y_p: float, theta_p: float, limited: bool):
        spec, world, pasture = self.spec, self.world, self.pasture
        fwd = _forward(theta_p)
        far = pasture.length if fwd > 0 else 0.0
        mode = ConstraintMode.F_PRIME if limited else ConstraintMode.F
        while True:
            pose = world.mower
            if fwd * (far - pose.x) <= 1e-12:
                return
            plan = PathPlan([Line(pose.x, pose.y, far, pose.y, theta=theta_p)])
            arr, px, py, pth, steps = _sample_arrays(plan, spec.step_ds)
            j = 0
            replanned = False
            while True:
                if j >= len(px) - 1:
                    return
                cand = _candidate_indices(world, y_p, theta_p, mode, spec)
                if cand.size:
                    sub = _wriggle_plan(world, theta_p, cand, spec, pasture)
                    if sub is not None:
                        if self._exec(sub, watch=(fwd, far)) == "boundary":
                            return
                        replanned = True
                        break
                    jend = j + 2
                else:
                    jend = len(px)
                stop, events = advance_block(world, px, py, pth, steps, j + 1, jend, spec)
                self.traj.append(arr[j + 1 : stop + 1])
                self._log_events(events)
                self._abort_check()
                j = stop
            if replanned:
                continue

    def _run_snake(self, kind: PlannerKind):
        spec, world, pasture = self.spec, self.world, self.pasture
        half_b = spec.implement_width / 2.0
        y_p, theta_p = half_b, 0.0
        limited = kind == PlannerKind.SNAKE_STATIC_LIMITED
        while True:
            start_x = 0.0 if _forward(theta_p) > 0 else pasture.length
            self._transit_to(Pose(start_x, y_p, theta_p))
            self._snake_pass(y_p, theta_p, limited)
            state = PassState(y_p, theta_p, self.passes)
            self.passes += 1
            if is_terminated(kind, world, state, pasture, spec):
                return
            ys = world.weed_y[_detected_unmowed(world)]
            y_next = next_pass_y(kind, y_p, ys, pasture, spec)
            if kind != PlannerKind.SNAKE_DYNAMIC and y_next < y_p - 1e-12:
                raise InvariantViolation("static pass ladder moved down")
            y_p = y_next
            theta_p = mod2pi(math.pi - theta_p)

    # -- baselines -------------------------------------------------------

    def _run_bcp(self):
        plan = build_bcp(self.pasture, self.spec.implement_width, self.spec)
        self.passes = int(math.ceil(self.pasture.width / self.spec.implement_width - 1e-12))
        self._exec(plan)

    def _run_bcp_tsp(self):
        spec, world, pasture = self.spec, self.world, self.pasture
        sweep = build_bcp(pasture, spec.fov_width, spec)
        self.passes = int(math.ceil(pasture.width / spec.fov_width - 1e-12))
        self._transit_to(sweep.start_pose)
        self._exec(sweep)
        targets = _detected_unmowed(world)
        if targets.size == 0:
            return
        pose = world.mower
        pts = np.column_stack((world.weed_x[targets], world.weed_y[targets]))
        tour = heuristic_tour((pose.x, pose.y), [tuple(p) for p in pts])
        ordered = pts[list(tour.order)]
        prev = np.array([pose.x, pose.y])
        for k, p in enumerate(ordered):
            if k + 1 < len(ordered):
                d = ordered[k + 1] - p
            else:
                d = p - prev
            heading = math.atan2(d[1], d[0]) if math.hypot(*d) > _TOL else world.mower.theta
            leg = dubins_shortest(world.mower, Pose(p[0], p[1], heading), spec.turn_radius)
            self._exec(leg)
            prev = p

    def _run_react(self):
        spec, world, pasture = self.spec, self.world, self.pasture
        rng = np.random.default_rng([self.seed, 0x5EED])
        budget = self.bcp_ref
        cursor = 0
        waypoint = None
        while world.odometer < budget - _TOL:
            while cursor < len(self.detect_log) and world.weed_status[self.detect_log[cursor]] == 2:
                cursor += 1
            pose = world.mower
            if cursor < len(self.detect_log):
                i = self.detect_log[cursor]
                wx, wy = float(world.weed_x[i]), float(world.weed_y[i])
                if math.hypot(wx - pose.x, wy - pose.y) < _TOL:
                    cursor += 1
                    continue
                heading = math.atan2(wy - pose.y, wx - pose.x)
                leg = dubins_shortest(pose, Pose(wx, wy, heading), spec.turn_radius)
                if self._exec(leg, budget=budget) == "budget":
                    return
                if world.weed_status[i] != 2:
                    cursor += 1  # drive-over missed; do not chase forever
            else:
                if waypoint is None:
                    waypoint = rng.uniform(
                        (0.0, 0.0, 0.0),
                        (pasture.length, pasture.width, 2.0 * math.pi),
                    )
                leg = dubins_shortest(
                    pose, Pose(waypoint[0], waypoint[1], waypoint[2]), spec.turn_radius
                )
                why = self._exec(
                    leg,
                    budget=budget,
                    arrive=((waypoint[0], waypoint[1]), 0.5),
                    stop_on_detect=True,
                )
                if why == "budget":
                    return
                if why in ("arrive", "end", "detect"):
                    waypoint = None

    # -- entry -----------------------------------------------------------

    def run(self) -> tuple[np.ndarray, RunStats]:
        kind = self.kind
        if kind in (PlannerKind.JUMP_HIGH, PlannerKind.JUMP_LOW):
            self._run_jump(kind)
        elif kind in (
            PlannerKind.SNAKE_STATIC,
            PlannerKind.SNAKE_STATIC_LIMITED,
            PlannerKind.SNAKE_DYNAMIC,
        ):
            self._run_snake(kind)
        elif kind == PlannerKind.BCP:
            self._run_bcp()
        elif kind == PlannerKind.BCP_TSP:
            self._run_bcp_tsp()
        elif kind == PlannerKind.REACT:
            self._run_react()
        else:
            raise ValueError(f"unknown planner {kind!r}")

        world = self.world
        n = world.weed_x.shape[0]
        detected = float(np.count_nonzero(world.weed_status >= 1))
        mowed = float(np.count_nonzero(world.weed_status == 2))
        stats = RunStats(
            planner=kind.value,
            path_length_m=world.odometer,
            bcp_length_m=self.bcp_ref,
            pct_of_bcp=100.0 * world.odometer / self.bcp_ref,
            weeds_detected_pct=100.0 * detected / n if n else 100.0,
            weeds_mowed_pct=100.0 * mowed / n if n else 100.0,
            passes=self.passes,
            invariant_checks=self.invariant_checks,
        )
        return np.concatenate([t for t in self.traj if len(t)]), stats


def run_planner(
    kind,
    world: WorldState,
    pasture: PastureSpec,
    spec: MowerSpec,
    seed: int = 0,
) -> tuple[np.ndarray, RunStats]:
    """Run one planner episode to termination on a live world.

    The world is advanced in place; the returned trajectory holds every
    pose the mower occupied. Raises PlannerAbort if the episode exceeds
    five reference sweeps without terminating, and InvariantViolation if a
    pass-boundary guarantee breaks.
    """
    return _Episode(PlannerKind(kind), world, pasture, spec, seed).run()
