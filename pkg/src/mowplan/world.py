"""Deterministic discrete-step pasture world.

Weed field generation, wedge-FOV detection, implement-sweep mowing and
odometry. One WorldState is owned by exactly one simulation loop;
distinct instances are independent.
"""

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from . import _kernels
from .geom import Pose


class WeedStatus(IntEnum):
    UNDETECTED = 0
    DETECTED = 1
    MOWED = 2


@dataclass(frozen=True)
class PastureSpec:
    """Rectangular field with corners (0,0) and (length, width)."""

    length: float = 100.0
    width: float = 40.0

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            raise ValueError("pasture dimensions must be positive")


@dataclass(frozen=True)
class MowerSpec:
    """Vehicle and sensing geometry.

    turn_radius: minimum turning radius in meters.
    implement_width: full cut width of the mower deck.
    speed: constant forward speed, m/s.
    fov_depth, fov_width: sensing wedge depth and full width at depth.
    step_ds: arc-length discretization of executed paths.
    """

    turn_radius: float = 2.0
    implement_width: float = 2.0
    speed: float = 1.0
    fov_depth: float = 12.0
    fov_width: float = 12.0
    step_ds: float = 0.1

    def __post_init__(self):
        vals = (
            self.turn_radius,
            self.implement_width,
            self.speed,
            self.fov_depth,
            self.fov_width,
            self.step_ds,
        )
        if any(v <= 0 for v in vals):
            raise ValueError("mower spec values must be positive")
        # Sweep quads from consecutive steps must overlap generously.
        if self.step_ds > self.implement_width / 2.0:
            raise ValueError("step_ds too coarse for the implement width")


@dataclass(frozen=True)
class Weed:
    id: int
    x: float
    y: float
    status: WeedStatus = WeedStatus.UNDETECTED


@dataclass(frozen=True)
class DetectedWeed:
    id: int


@dataclass(frozen=True)
class MowedWeed:
    id: int


def generate_weeds(n, distribution="uniform", pasture=None, seed=0, sigma=3.0):
    """Sample n weed positions inside the pasture.

    distribution "uniform": i.i.d. uniform over the rectangle.
    distribution "gauss": ceil(0.2*n) uniform cluster seeds; every other
    weed picks a seed uniformly and samples an isotropic Gaussian around
    it, redrawing until the point lands inside the pasture.
    """
    if pasture is None:
        pasture = PastureSpec()
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    hi = (pasture.length, pasture.width)
    if n == 0:
        pts = np.zeros((0, 2))
    elif distribution == "uniform":
        pts = rng.uniform((0.0, 0.0), hi, (n, 2))
    elif distribution == "gauss":
        k = math.ceil(0.2 * n)
        seeds = rng.uniform((0.0, 0.0), hi, (k, 2))
        rows = [seeds]
        for _ in range(n - k):
            c = seeds[rng.integers(k)]
            while True:
                p = c + sigma * rng.standard_normal(2)
                if 0.0 <= p[0] <= hi[0] and 0.0 <= p[1] <= hi[1]:
                    break
            rows.append(p[None, :])
        pts = np.concatenate(rows, axis=0)
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return [Weed(i, float(x), float(y)) for i, (x, y) in enumerate(pts)]


def fov_contains(mower: Pose, spec: MowerSpec, x: float, y: float) -> bool:
    """Inclusive membership of a point in the forward sensing wedge."""
    m = _kernels.fov_mask_np(
        np.asarray([x], dtype=float),
        np.asarray([y], dtype=float),
        mower.x,
        mower.y,
        mower.theta,
        spec.fov_depth,
        spec.fov_width,
    )
    return bool(m[0])


@dataclass
class WorldState:
    """Mutable episode state: mower pose, weed arrays, odometry."""

    mower: Pose
    weed_id: np.ndarray
    weed_x: np.ndarray
    weed_y: np.ndarray
    weed_status: np.ndarray
    odometer: float = 0.0
    clock: float = 0.0
    events: list = field(default_factory=list)

    @classmethod
    def from_weeds(cls, mower: Pose, weeds) -> "WorldState":
        return cls(
            mower=mower,
            weed_id=np.asarray([w.id for w in weeds], dtype=np.int64),
            weed_x=np.asarray([w.x for w in weeds], dtype=np.float64),
            weed_y=np.asarray([w.y for w in weeds], dtype=np.float64),
            weed_status=np.asarray([int(w.status) for w in weeds], dtype=np.int8),
        )

    @property
    def weeds(self):
        return [
            Weed(int(i), float(x), float(y), WeedStatus(int(s)))
            for i, x, y, s in zip(
                self.weed_id, self.weed_x, self.weed_y, self.weed_status
            )
        ]

    def detected_unmowed(self) -> np.ndarray:
        """Indices of the working list: detected, not yet mowed."""
        return np.flatnonzero(self.weed_status == int(WeedStatus.DETECTED))

    def counts(self):
        s = self.weed_status
        return (
            int(np.sum(s == 0)),
            int(np.sum(s == 1)),
            int(np.sum(s == 2)),
        )


def _apply_hits(world: WorldState, hit: np.ndarray):
    """Turn HIT_* codes into ordered events and status transitions."""
    events = []
    det = np.flatnonzero(hit & _kernels.HIT_DETECT)
    mow = np.flatnonzero(hit & _kernels.HIT_MOW)
    for i in det:
        events.append(DetectedWeed(int(world.weed_id[i])))
        world.weed_status[i] = int(WeedStatus.DETECTED)
    for i in mow:
        events.append(MowedWeed(int(world.weed_id[i])))
        world.weed_status[i] = int(WeedStatus.MOWED)
    return events


def advance(world: WorldState, nxt: Pose, spec: MowerSpec, pasture: PastureSpec):
    """Move the mower one step and return the events the step produced.

    Detection happens at the arrival pose; mowing covers the quad swept
    by the implement segment between the two poses. A weed can be
    detected and mowed in the same step.
    """
    step = world.mower.distance_to(nxt)
    if step > spec.step_ds + 1e-6:
        raise ValueError(f"step {step:.4f} exceeds step_ds {spec.step_ds}")
    px = np.asarray([world.mower.x, nxt.x])
    py = np.asarray([world.mower.y, nxt.y])
    pth = np.asarray([world.mower.theta, nxt.theta])
    hit = np.zeros(world.weed_x.shape[0], dtype=np.int8)
    j = _kernels.scan_steps_np(
        px,
        py,
        pth,
        1,
        2,
        world.weed_x,
        world.weed_y,
        world.weed_status,
        spec.implement_width / 2.0,
        spec.fov_depth,
        spec.fov_width,
        hit,
    )
    events = _apply_hits(world, hit) if j < 2 else []
    world.mower = nxt
    world.odometer += step
    world.clock = world.odometer / spec.speed
    world.events.extend(events)
    return events


def advance_block(world, px, py, pth, steps, j0, jend, spec):
    """Run steps j0..jend-1 of a sampled pose block, stopping after the
    first step that produces events. steps[j] must hold the chord
    distance from pose j-1 to pose j. Returns (j_stop, events); j_stop
    is the index of the pose now occupied (jend-1 when event-free).

    Semantically identical to calling advance() per step; the compiled
    scan only short-cuts the event-free prefix.
    """
    hit = np.zeros(world.weed_x.shape[0], dtype=np.int8)
    j = _kernels.scan_steps(
        px,
        py,
        pth,
        j0,
        jend,
        world.weed_x,
        world.weed_y,
        world.weed_status,
        spec.implement_width / 2.0,
        spec.fov_depth,
        spec.fov_width,
        hit,
    )
    stop = min(j, jend - 1)
    events = _apply_hits(world, hit) if j < jend else []
    # Left-fold accumulation: the odometer value must not depend on where
    # event stops split a pose stream, so identical pose streams always
    # integrate to bit-identical lengths.
    od = world.odometer
    for v in steps[j0 : stop + 1]:
        od += float(v)
    world.mower = Pose(px[stop], py[stop], pth[stop])
    world.odometer = od
    world.clock = world.odometer / spec.speed
    world.events.extend(events)
    return stop, events
