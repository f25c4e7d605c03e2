import math

import numpy as np
import pytest

from mowplan import _kernels
from mowplan.geom import Pose
from mowplan.world import (
    DetectedWeed,
    MowedWeed,
    MowerSpec,
    PastureSpec,
    Weed,
    WeedStatus,
    WorldState,
    advance,
    advance_block,
    fov_contains,
    generate_weeds,
)

PASTURE = PastureSpec(100.0, 40.0)
SPEC = MowerSpec()


def test_generate_zero_weeds():
    assert generate_weeds(0, "uniform", PASTURE, seed=1) == []


def test_generate_uniform_bounds_and_mean():
    weeds = generate_weeds(1000, "uniform", PASTURE, seed=7)
    xs = np.array([w.x for w in weeds])
    ys = np.array([w.y for w in weeds])
    assert xs.min() >= 0 and xs.max() <= 100
    assert ys.min() >= 0 and ys.max() <= 40
    # Mean of n uniforms: sd = span/sqrt(12)/sqrt(n); allow 3 sd.
    assert abs(xs.mean() - 50.0) < 3 * (100 / math.sqrt(12)) / math.sqrt(1000)
    assert abs(ys.mean() - 20.0) < 3 * (40 / math.sqrt(12)) / math.sqrt(1000)


def test_generate_gauss_seed_points_match_uniform_stream():
    # ceil(0.2*10) = 2 cluster seeds are drawn exactly like a uniform
    # sample of size 2, so the first two weeds coincide.
    gauss = generate_weeds(10, "gauss", PASTURE, seed=42)
    unif = generate_weeds(2, "uniform", PASTURE, seed=42)
    for g, u in zip(gauss[:2], unif):
        assert g.x == u.x and g.y == u.y


def test_generate_gauss_inside_and_deterministic():
    a = generate_weeds(50, "gauss", PASTURE, seed=3, sigma=3.0)
    b = generate_weeds(50, "gauss", PASTURE, seed=3, sigma=3.0)
    assert [(w.x, w.y) for w in a] == [(w.x, w.y) for w in b]
    for w in a:
        assert 0 <= w.x <= 100 and 0 <= w.y <= 40


def test_generate_rejects_unknown_distribution():
    with pytest.raises(ValueError):
        generate_weeds(5, "blue-noise", PASTURE, seed=0)


def test_fov_far_corner_inclusive():
    assert fov_contains(Pose(0, 0, 0), SPEC, 12.0, 6.0)
    assert fov_contains(Pose(0, 0, 0), SPEC, 12.0, -6.0)


def test_fov_half_width_scales_with_depth():
    assert not fov_contains(Pose(0, 0, 0), SPEC, 6.0, 3.1)
    assert fov_contains(Pose(0, 0, 0), SPEC, 6.0, 3.0)


def test_fov_rotation_covariance():
    assert fov_contains(Pose(0, 0, math.pi / 2), SPEC, 0.0, 6.0)
    assert not fov_contains(Pose(0, 0, math.pi / 2), SPEC, 6.0, 0.0)


def test_fov_behind_apex_excluded():
    assert not fov_contains(Pose(0, 0, 0), SPEC, -0.5, 0.0)
    assert fov_contains(Pose(0, 0, 0), SPEC, 0.0, 0.0)


def _world_at(pose, weed_xy):
    weeds = [Weed(i, x, y) for i, (x, y) in enumerate(weed_xy)]
    return WorldState.from_weeds(pose, weeds)


def test_advance_mows_weed_ahead():
    w = _world_at(Pose(0, 20, 0), [(0.05, 20.0)])
    events = advance(w, Pose(0.1, 20, 0), SPEC, PASTURE)
    assert MowedWeed(0) in events
    assert w.weed_status[0] == int(WeedStatus.MOWED)
    assert abs(w.odometer - 0.1) < 1e-12


def test_advance_lateral_boundary():
    half = SPEC.implement_width / 2.0
    w = _world_at(Pose(0, 20, 0), [(0.05, 20.0 + half), (0.05, 20.0 + half + 1e-6)])
    advance(w, Pose(0.1, 20, 0), SPEC, PASTURE)
    assert w.weed_status[0] == int(WeedStatus.MOWED)
    assert w.weed_status[1] != int(WeedStatus.MOWED)


def test_mow_implies_detection_event():
    # A weed run over before it ever entered the wedge still yields both
    # events in the same step, Detected first.
    w = _world_at(Pose(0, 20, 0), [(0.05, 20.9)])
    assert not fov_contains(Pose(0, 20, 0), SPEC, 0.05, 20.9)
    events = advance(w, Pose(0.1, 20, 0), SPEC, PASTURE)
    assert events == [DetectedWeed(0), MowedWeed(0)]


def test_advance_detects_at_fov_boundary_crossing():
    # Weed dead ahead at exactly the wedge depth: detected on the first
    # step, and fov_contains agrees at every sampled pose.
    w = _world_at(Pose(0, 20, 0), [(SPEC.fov_depth + 0.25, 20.0)])
    seen_step = None
    for k in range(1, 6):
        pose = Pose(0.1 * k, 20, 0)
        events = advance(w, pose, SPEC, PASTURE)
        contains = fov_contains(pose, SPEC, SPEC.fov_depth + 0.25, 20.0)
        if seen_step is None and events:
            assert events == [DetectedWeed(0)]
            assert contains
            seen_step = k
        elif seen_step is None:
            assert not contains
    assert seen_step == 3


def test_advance_rejects_oversized_step():
    w = _world_at(Pose(0, 20, 0), [])
    with pytest.raises(ValueError):
        advance(w, Pose(1.0, 20, 0), SPEC, PASTURE)


def test_zero_step_detects_without_mowing():
    w = _world_at(Pose(0, 20, 0), [(0.05, 20.9), (5.0, 20.0)])
    events = advance(w, Pose(0, 20, 0), SPEC, PASTURE)
    # The off-axis weed sits inside neither the (zero-area) sweep nor
    # the narrow wedge apex; the one 5 m dead ahead is detected.
    assert events == [DetectedWeed(1)]
    assert w.weed_status[0] == int(WeedStatus.UNDETECTED)


def test_status_conservation_over_random_walk():
    rng = np.random.default_rng(11)
    weeds = generate_weeds(40, "uniform", PASTURE, seed=2)
    w = WorldState.from_weeds(Pose(0, 20, 0), weeds)
    pose = Pose(0, 20, 0)
    prev_status = w.weed_status.copy()
    for _ in range(400):
        th = pose.theta + rng.uniform(-0.05, 0.05)
        pose = Pose(
            min(max(pose.x + 0.1 * math.cos(th), 0), 100),
            min(max(pose.y + 0.1 * math.sin(th), 0), 40),
            th,
        )
        advance(w, pose, SPEC, PASTURE)
        assert np.all(w.weed_status >= prev_status)
        prev_status = w.weed_status.copy()
    assert sum(w.counts()) == 40
    assert w.odometer <= 400 * 0.1 + 1e-9


def _random_block(rng, n_weeds):
    weeds = generate_weeds(n_weeds, "uniform", PASTURE, seed=int(rng.integers(1 << 30)))
    start = Pose(rng.uniform(0, 30), rng.uniform(5, 35), rng.uniform(0, 2 * math.pi))
    poses = [start]
    pose = start
    for _ in range(300):
        th = pose.theta + rng.uniform(-0.08, 0.08)
        pose = Pose(pose.x + 0.1 * math.cos(th), pose.y + 0.1 * math.sin(th), th)
        poses.append(pose)
    px = np.array([p.x for p in poses])
    py = np.array([p.y for p in poses])
    pth = np.array([p.theta for p in poses])
    steps = np.zeros(len(poses))
    steps[1:] = np.hypot(np.diff(px), np.diff(py))
    return weeds, px, py, pth, steps


def test_block_scan_equals_stepwise_advance():
    rng = np.random.default_rng(99)
    for _ in range(20):
        weeds, px, py, pth, steps = _random_block(rng, 25)
        ref = WorldState.from_weeds(Pose(px[0], py[0], pth[0]), weeds)
        ref_events = []
        for j in range(1, len(px)):
            ref_events.extend(advance(ref, Pose(px[j], py[j], pth[j]), SPEC, PASTURE))
        blk = WorldState.from_weeds(Pose(px[0], py[0], pth[0]), weeds)
        blk_events = []
        j = 0
        while j < len(px) - 1:
            j, ev = advance_block(blk, px, py, pth, steps, j + 1, len(px), SPEC)
            blk_events.extend(ev)
        assert blk_events == ref_events
        assert np.array_equal(blk.weed_status, ref.weed_status)
        assert abs(blk.odometer - ref.odometer) < 1e-9


@pytest.mark.skipif(not _kernels.NUMBA_OK, reason="numba unavailable")
def test_compiled_and_numpy_scans_agree():
    rng = np.random.default_rng(123)
    for _ in range(20):
        weeds, px, py, pth, steps = _random_block(rng, 30)
        results = []
        for fn in (_kernels.scan_steps_nb, _kernels.scan_steps_np):
            w = WorldState.from_weeds(Pose(px[0], py[0], pth[0]), weeds)
            log = []
            j = 0
            while j < len(px) - 1:
                hit = np.zeros(len(weeds), dtype=np.int8)
                stop = fn(
                    px,
                    py,
                    pth,
                    j + 1,
                    len(px),
                    w.weed_x,
                    w.weed_y,
                    w.weed_status,
                    SPEC.implement_width / 2.0,
                    SPEC.fov_depth,
                    SPEC.fov_width,
                    hit,
                )
                if stop < len(px):
                    log.append((stop, hit.copy().tolist()))
                    w.weed_status[hit & 1 > 0] = np.maximum(
                        w.weed_status[hit & 1 > 0], 1
                    )
                    w.weed_status[hit & 2 > 0] = 2
                j = min(stop, len(px) - 1)
            results.append((log, w.weed_status.tolist()))
        assert results[0] == results[1]
