"""Compare the compiled step-scan kernel against the numpy fallback.

Two layers:
  kernel  -- time scan_steps_nb vs scan_steps_np directly on an event-free
             pose window (worst case: the scan visits every step).
  episode -- wall time of full planner episodes in subprocesses with
             MOWPLAN_NUMBA=1 and =0, since the dispatch flag is read at
             import time.

Usage: python3 benchmarks/kernel_benchmark.py [--sizes 100,1000,10000]
"""

import argparse
import math
import os
import subprocess
import sys
import time

import numpy as np

from mowplan import _kernels

EPISODE_SNIPPET = """
import time
from mowplan.harness import RunConfig, run_instance
t0 = time.perf_counter()
for seed in range(5):
    run_instance(RunConfig(planner="JUMP_LOW", n_weeds=160, seed=seed))
print(time.perf_counter() - t0)
"""


def pose_window(n_steps=2000, ds=0.1):
    """A straight pass followed by a semicircle turn, sampled at ds."""
    n_straight = n_steps * 3 // 4
    xs = np.arange(n_steps, dtype=float) * ds
    ys = np.zeros(n_steps)
    ths = np.zeros(n_steps)
    r = 2.0
    for i in range(n_straight, n_steps):
        a = (i - n_straight) * ds / r
        ths[i] = a
        xs[i] = xs[n_straight - 1] + r * math.sin(a)
        ys[i] = r * (1.0 - math.cos(a))
    return xs, ys, ths


def bench_kernel(fn, n_weeds, repeat=5):
    px, py, pth = pose_window()
    rng = np.random.default_rng(0)
    # Weeds far below the strip: no events, the scan runs to the end.
    wx = rng.uniform(0.0, 200.0, n_weeds)
    wy = rng.uniform(-60.0, -40.0, n_weeds)
    wstatus = np.zeros(n_weeds, dtype=np.int8)
    hit = np.zeros(n_weeds, dtype=np.int8)
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        stop = fn(px, py, pth, 1, len(px), wx, wy, wstatus, 1.0, 12.0, 12.0, hit)
        best = min(best, time.perf_counter() - t0)
    assert stop == len(px) and not hit.any()
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,1000,10000")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-episodes", action="store_true")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    if not _kernels.NUMBA_OK:
        print("numba unavailable; only the numpy kernel can be timed")
    else:
        # Trigger compilation outside the timed region.
        bench_kernel(_kernels.scan_steps_nb, 8, repeat=1)

    print(f"{'n_weeds':>8} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>8}")
    for n in sizes:
        t_np = bench_kernel(_kernels.scan_steps_np, n, args.repeat)
        if _kernels.NUMBA_OK:
            t_nb = bench_kernel(_kernels.scan_steps_nb, n, args.repeat)
            print(f"{n:>8} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")
        else:
            print(f"{n:>8} {t_np * 1e3:>12.2f} {'-':>12} {'-':>8}")

    if args.skip_episodes:
        return 0
    print("\nfive JUMP_LOW episodes, n=160 (subprocess per mode):")
    for label, flag in (("numba", "1"), ("numpy", "0")):
        env = dict(os.environ, MOWPLAN_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, "-c", EPISODE_SNIPPET],
            capture_output=True,
            text=True,
            env=env,
        )
        if out.returncode != 0:
            print(f"  {label}: failed\n{out.stderr}")
            return 1
        print(f"  {label}: {float(out.stdout.strip()):.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
