"""Hot per-step kernels: wedge FOV membership and implement-sweep tests.

Two interchangeable implementations of the same step scan live here: a
numba-compiled loop and a vectorized numpy fallback. The numba path is
used when the package is importable and MOWPLAN_NUMBA is not "0".
Both must produce identical event sequences; tests enforce this.
"""

import math
import os

import numpy as np

try:
    from numba import njit

    NUMBA_OK = True
except Exception:
    NUMBA_OK = False

USE_NUMBA = NUMBA_OK and os.environ.get("MOWPLAN_NUMBA", "1") != "0"

# Metric slack for inclusive boundary tests, in meters.
EDGE_TOL = 1e-9

# Bit codes written into the hit array by a scan.
HIT_DETECT = 1
HIT_MOW = 2


def fov_local(px, py, ptheta, wx, wy):
    """Weed coordinates in the mower frame (x forward, y left)."""
    c = np.cos(ptheta)
    s = np.sin(ptheta)
    dx = wx - px
    dy = wy - py
    return c * dx + s * dy, -s * dx + c * dy


def fov_mask_np(wx, wy, px, py, ptheta, sd, sw):
    """Inclusive membership in the forward wedge: 0 <= x_l <= Sd,
    |y_l| <= (Sw/2) * (x_l/Sd)."""
    xl, yl = fov_local(px, py, ptheta, wx, wy)
    slope = sw / (2.0 * sd)
    return (
        (xl >= -EDGE_TOL)
        & (xl <= sd + EDGE_TOL)
        & (np.abs(yl) <= slope * xl + EDGE_TOL)
    )


def _quad_vertices(x0, y0, t0, x1, y1, t1, half):
    """Corners of the area swept by the implement segment between two
    poses, ordered around the boundary."""
    n0x, n0y = -math.sin(t0), math.cos(t0)
    n1x, n1y = -math.sin(t1), math.cos(t1)
    ax, ay = x0 - half * n0x, y0 - half * n0y
    bx, by = x0 + half * n0x, y0 + half * n0y
    cx, cy = x1 + half * n1x, y1 + half * n1y
    dx, dy = x1 - half * n1x, y1 - half * n1y
    return ax, ay, bx, by, cx, cy, dx, dy


def quad_mask_np(wx, wy, x0, y0, t0, x1, y1, t1, half):
    """Inclusive point-in-swept-quad test, vectorized over weeds."""
    ax, ay, bx, by, cx, cy, dx, dy = _quad_vertices(x0, y0, t0, x1, y1, t1, half)
    # Diagonal cross product fixes the winding of this step's quad.
    area2 = (cx - ax) * (dy - by) - (cy - ay) * (dx - bx)
    sign = 1.0 if area2 >= 0.0 else -1.0
    inside = np.ones(wx.shape, dtype=bool)
    verts = ((ax, ay, bx, by), (bx, by, cx, cy), (cx, cy, dx, dy), (dx, dy, ax, ay))
    for vx0, vy0, vx1, vy1 in verts:
        ex, ey = vx1 - vx0, vy1 - vy0
        elen = math.hypot(ex, ey)
        if elen < 1e-15:
            continue
        cross = ex * (wy - vy0) - ey * (wx - vx0)
        inside &= sign * cross >= -EDGE_TOL * elen
    return inside


def scan_steps_np(px, py, pth, j0, jend, wx, wy, wstatus, half, sd, sw, hit):
    """Advance through poses j0..jend-1, stopping at the first step with a
    detection or mow event. Step j covers motion pose[j-1] -> pose[j];
    detection is evaluated at pose[j]. Writes HIT_* codes for the stop
    step into `hit` and returns the stop index (jend when event-free).

    Read-only with respect to wstatus: on an event-free prefix no status
    can change, so scanning without mutation is sound.
    """
    for j in range(j0, jend):
        x0, y0, t0 = px[j - 1], py[j - 1], pth[j - 1]
        x1, y1, t1 = px[j], py[j], pth[j]
        step = math.hypot(x1 - x0, y1 - y0)
        live = wstatus < 2
        if step > 1e-12:
            mow = live & quad_mask_np(wx, wy, x0, y0, t0, x1, y1, t1, half)
        else:
            mow = np.zeros(wx.shape, dtype=bool)
        unseen = wstatus == 0
        det = unseen & fov_mask_np(wx, wy, x1, y1, t1, sd, sw)
        # Mowing an unseen weed detects it in the same step.
        det |= unseen & mow
        if det.any() or mow.any():
            hit[det] |= HIT_DETECT
            hit[mow] |= HIT_MOW
            return j
    return jend


if NUMBA_OK:

    @njit(cache=True)
    def scan_steps_nb(px, py, pth, j0, jend, wx, wy, wstatus, half, sd, sw, hit):
        slope = sw / (2.0 * sd)
        n = wx.shape[0]
        for j in range(j0, jend):
            x0, y0, t0 = px[j - 1], py[j - 1], pth[j - 1]
            x1, y1, t1 = px[j], py[j], pth[j]
            sx = x1 - x0
            sy = y1 - y0
            step = math.sqrt(sx * sx + sy * sy)
            has_quad = step > 1e-12
            ax = ay = bx = by = cx = cy = dx = dy = 0.0
            sign = 1.0
            if has_quad:
                n0x, n0y = -math.sin(t0), math.cos(t0)
                n1x, n1y = -math.sin(t1), math.cos(t1)
                ax, ay = x0 - half * n0x, y0 - half * n0y
                bx, by = x0 + half * n0x, y0 + half * n0y
                cx, cy = x1 + half * n1x, y1 + half * n1y
                dx, dy = x1 - half * n1x, y1 - half * n1y
                area2 = (cx - ax) * (dy - by) - (cy - ay) * (dx - bx)
                if area2 < 0.0:
                    sign = -1.0
            ct = math.cos(t1)
            st = math.sin(t1)
            any_event = False
            for i in range(n):
                stv = wstatus[i]
                if stv == 2:
                    continue
                code = 0
                if has_quad:
                    inside = True
                    vx0, vy0, vx1, vy1 = ax, ay, bx, by
                    for e in range(4):
                        if e == 1:
                            vx0, vy0, vx1, vy1 = bx, by, cx, cy
                        elif e == 2:
                            vx0, vy0, vx1, vy1 = cx, cy, dx, dy
                        elif e == 3:
                            vx0, vy0, vx1, vy1 = dx, dy, ax, ay
                        ex, ey = vx1 - vx0, vy1 - vy0
                        elen = math.sqrt(ex * ex + ey * ey)
                        if elen < 1e-15:
                            continue
                        cross = ex * (wy[i] - vy0) - ey * (wx[i] - vx0)
                        if sign * cross < -EDGE_TOL * elen:
                            inside = False
                            break
                    if inside:
                        code |= HIT_MOW
                if stv == 0:
                    ddx = wx[i] - x1
                    ddy = wy[i] - y1
                    xl = ct * ddx + st * ddy
                    yl = -st * ddx + ct * ddy
                    if (
                        xl >= -EDGE_TOL
                        and xl <= sd + EDGE_TOL
                        and abs(yl) <= slope * xl + EDGE_TOL
                    ):
                        code |= HIT_DETECT
                    elif code & HIT_MOW:
                        code |= HIT_DETECT
                if code != 0:
                    hit[i] = code
                    any_event = True
            if any_event:
                return j
        return jend

else:
    scan_steps_nb = None


def scan_steps(px, py, pth, j0, jend, wx, wy, wstatus, half, sd, sw, hit):
    """Dispatch to the compiled scan when enabled, else the numpy one."""
    if USE_NUMBA:
        return scan_steps_nb(px, py, pth, j0, jend, wx, wy, wstatus, half, sd, sw, hit)
    return scan_steps_np(px, py, pth, j0, jend, wx, wy, wstatus, half, sd, sw, hit)
