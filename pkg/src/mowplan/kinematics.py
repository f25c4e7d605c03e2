"""Rear-steered bicycle model tracked at the front reference point.

The steering wheel is the rear one, so a positive steering angle turns
the vehicle clockwise: thetadot = -(v/L) tan(delta). Used to validate
that planner paths respect a physically meaningful turning model.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geom import mod2pi


@dataclass(frozen=True)
class VehicleState:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (
            math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.theta)
        ):
            raise ValueError("state must be finite")
        object.__setattr__(self, "theta", mod2pi(self.theta))


@dataclass(frozen=True)
class ControlInput:
    v: float
    delta: float
    wheelbase: float

    def __post_init__(self):
        if not abs(self.delta) < math.pi / 2:
            raise ValueError("|delta| must be below pi/2")
        if self.wheelbase <= 0:
            raise ValueError("wheelbase must be positive")


def turn_radius(u: ControlInput) -> float:
    """Signed radius L/tan(delta) at the reference point; inf when
    driving straight."""
    if u.delta == 0.0:
        return math.inf
    return u.wheelbase / math.tan(u.delta)


def state_derivative(s, u: ControlInput):
    """(xdot, ydot, thetadot). Works on VehicleState or a (3,) array."""
    x, y, theta = (s.x, s.y, s.theta) if isinstance(s, VehicleState) else s
    return (
        u.v * math.cos(theta),
        u.v * math.sin(theta),
        -(u.v / u.wheelbase) * math.tan(u.delta),
    )


def integrate(s0: VehicleState, u: ControlInput, duration: float, dt: float = 1e-3):
    """Fixed-step 4th-order integration under constant controls.

    Returns an (k, 3) array of states at multiples of dt plus the final
    time. Headings are left unwrapped so trajectories stay smooth.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    n_full = int(math.floor(duration / dt + 1e-12))
    times = [i * dt for i in range(n_full + 1)]
    if duration - times[-1] > 1e-12:
        times.append(duration)
    traj = np.empty((len(times), 3))
    traj[0] = (s0.x, s0.y, s0.theta)
    state = traj[0].copy()
    for k in range(1, len(times)):
        h = times[k] - times[k - 1]
        k1 = np.asarray(state_derivative(state, u))
        k2 = np.asarray(state_derivative(state + 0.5 * h * k1, u))
        k3 = np.asarray(state_derivative(state + 0.5 * h * k2, u))
        k4 = np.asarray(state_derivative(state + h * k3, u))
        state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        traj[k] = state
    return traj
