"""Reproducible experiment runner: single episodes, parameter sweeps, CSV.

Every run is keyed by integer seeds derived with a fixed 64-bit mixer, so
a sweep's rows never change when cells are added, when the worker count
changes, or when the sweep is rerun. All planners in a cell replicate see
the same weed field, which is what makes their rows comparable.
"""

import csv
import json
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .geom import Pose
from .planners import (
    InvariantViolation,
    PlannerAbort,
    PlannerKind,
    bcp_reference_length,
    run_planner,
)
from .world import MowerSpec, PastureSpec, Weed, WorldState, generate_weeds

SCHEMA_COMMENT = "# results schema v1"
SUMMARY_COMMENT = "# summary schema v1"

RESULT_COLUMNS = [
    "planner",
    "seed",
    "n_weeds",
    "distribution",
    "R",
    "Sd",
    "Sw",
    "path_length_m",
    "bcp_length_m",
    "pct_of_bcp",
    "weeds_detected_pct",
    "weeds_mowed_pct",
    "status",
]

SUMMARY_COLUMNS = [
    "planner",
    "n_weeds",
    "distribution",
    "R",
    "Sd",
    "Sw",
    "runs",
    "failures",
    "mean_pct_of_bcp",
    "sd_pct_of_bcp",
    "mean_weeds_mowed_pct",
    "sd_weeds_mowed_pct",
]

ALL_PLANNERS = tuple(k.value for k in PlannerKind)


@dataclass(frozen=True)
class Metrics:
    """Per-run observables. wall_time_s is an in-memory observable only:
    it never enters the CSV, which must be byte-identical across reruns."""

    planner: str
    seed: int
    n_weeds: int
    distribution: str
    path_length_m: float
    bcp_length_m: float
    pct_of_bcp: float
    weeds_detected_pct: float
    weeds_mowed_pct: float
    wall_time_s: float

    def __post_init__(self):
        for name in ("weeds_detected_pct", "weeds_mowed_pct"):
            v = getattr(self, name)
            if not math.isnan(v) and not 0.0 <= v <= 100.0:
                raise ValueError(f"{name} out of range: {v}")
        if not math.isnan(self.pct_of_bcp) and self.pct_of_bcp < 0.0:
            raise ValueError(f"pct_of_bcp negative: {self.pct_of_bcp}")


@dataclass(frozen=True)
class RunConfig:
    planner: str = "JUMP_LOW"
    pasture: PastureSpec = field(default_factory=lambda: PastureSpec(100.0, 40.0))
    mower: MowerSpec = field(default_factory=MowerSpec)
    n_weeds: int = 40
    distribution: str = "uniform"
    sigma: float = 3.0
    seed: int = 0
    # Explicit placements override generation; n_weeds/distribution are
    # then reporting labels only.
    weeds: Optional[tuple] = None


@dataclass(frozen=True)
class RunRecord:
    metrics: Metrics
    status: str  # "ok" | "abort" | "invariant_violation"


@dataclass(frozen=True)
class SweepGrid:
    R: Sequence[float] = (2.0,)
    Sd: Sequence[float] = (12.0,)
    Sw: Sequence[float] = (12.0,)
    n_weeds: Sequence[int] = (20, 40, 80, 160, 320, 640)
    distributions: Sequence[str] = ("uniform", "gauss")
    seeds_per_cell: int = 20
    planners: Sequence[str] = ALL_PLANNERS

    def __post_init__(self):
        for name in ("R", "Sd", "Sw", "n_weeds", "distributions", "planners"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"grid field {name} must be nonempty")
        if self.seeds_per_cell < 1:
            raise ValueError("seeds_per_cell must be >= 1")
        for p in self.planners:
            PlannerKind(p)  # raises on unknown names

    def cells(self):
        for r in self.R:
            for sd in self.Sd:
                for sw in self.Sw:
                    for n in self.n_weeds:
                        for dist in self.distributions:
                            yield (float(r), float(sd), float(sw), int(n), str(dist))

    @classmethod
    def from_json(cls, path) -> "SweepGrid":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown grid fields: {sorted(unknown)}")
        kwargs = {}
        for name in ("R", "Sd", "Sw"):
            if name in raw:
                kwargs[name] = tuple(float(v) for v in raw[name])
        if "n_weeds" in raw:
            kwargs["n_weeds"] = tuple(int(v) for v in raw["n_weeds"])
        if "distributions" in raw:
            kwargs["distributions"] = tuple(str(v) for v in raw["distributions"])
        if "planners" in raw:
            kwargs["planners"] = tuple(str(v) for v in raw["planners"])
        if "seeds_per_cell" in raw:
            kwargs["seeds_per_cell"] = int(raw["seeds_per_cell"])
        return cls(**kwargs)


# ------------------------------------------------------------- seed mixing

_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return (x ^ (x >> 31)) & _M64


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 64-bit seed from the master seed and cell coordinates.

    Strings and floats fold in through crc32 of their repr, so the value
    never depends on interpreter hash randomization. Every part changes
    the result; adding new cells to a grid cannot perturb old ones.
    """
    h = _splitmix64(int(master_seed) & _M64)
    for p in parts:
        if isinstance(p, (int, np.integer)):
            v = int(p) & _M64
        else:
            v = zlib.crc32(repr(p).encode("utf-8"))
        h = _splitmix64(h ^ v)
    return h


# ------------------------------------------------------------ single runs


def _weed_percentages(world: WorldState):
    n = len(world.weed_status)
    if n == 0:
        return 100.0, 100.0
    s = world.weed_status
    detected = 100.0 * float(np.sum(s >= 1)) / n
    mowed = 100.0 * float(np.sum(s == 2)) / n
    return detected, mowed


def run_episode(config: RunConfig):
    """One planner episode. Returns (record, world, trajectory).

    Planner runaway guards and invariant failures come back as a failed
    record (status != "ok") with the odometer and weed counts the episode
    reached; anything else propagates as a bug.
    """
    kind = PlannerKind(config.planner)
    if config.weeds is not None:
        weeds = [Weed(int(w.id), float(w.x), float(w.y)) for w in config.weeds]
    else:
        weeds = generate_weeds(
            config.n_weeds,
            config.distribution,
            config.pasture,
            seed=config.seed,
            sigma=config.sigma,
        )
    start = Pose(0.0, config.mower.implement_width / 2.0, 0.0)
    world = WorldState.from_weeds(start, weeds)

    t0 = time.perf_counter()
    status = "ok"
    traj = np.zeros((0, 3))
    try:
        traj, stats = run_planner(kind, world, config.pasture, config.mower, seed=config.seed)
        path_length = stats.path_length_m
        bcp_length = stats.bcp_length_m
        pct = stats.pct_of_bcp
        detected, mowed = stats.weeds_detected_pct, stats.weeds_mowed_pct
    except PlannerAbort:
        status = "abort"
    except InvariantViolation:
        status = "invariant_violation"
    if status != "ok":
        path_length = world.odometer
        bcp_length = bcp_reference_length(config.pasture, config.mower)
        pct = 100.0 * path_length / bcp_length
        detected, mowed = _weed_percentages(world)
    metrics = Metrics(
        planner=kind.value,
        seed=int(config.seed),
        n_weeds=len(weeds),
        distribution=config.distribution,
        path_length_m=path_length,
        bcp_length_m=bcp_length,
        pct_of_bcp=pct,
        weeds_detected_pct=detected,
        weeds_mowed_pct=mowed,
        wall_time_s=time.perf_counter() - t0,
    )
    return RunRecord(metrics, status), world, traj


def run_instance(config: RunConfig) -> RunRecord:
    record, _world, _traj = run_episode(config)
    return record


# ------------------------------------------------------------------ sweeps


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _cell_rows(args):
    """All rows of one grid cell, in (replicate, planner) order."""
    (r, sd, sw, n, dist), planners, seeds_per_cell, master_seed, pasture, mower, sigma = args
    mower = replace(mower, turn_radius=r, fov_depth=sd, fov_width=sw)
    rows = []
    for k in range(seeds_per_cell):
        seed = derive_seed(master_seed, r, sd, sw, n, dist, k)
        for planner in planners:
            rec = run_instance(
                RunConfig(
                    planner=planner,
                    pasture=pasture,
                    mower=mower,
                    n_weeds=n,
                    distribution=dist,
                    sigma=sigma,
                    seed=seed,
                )
            )
            m = rec.metrics
            rows.append(
                [
                    m.planner,
                    str(m.seed),
                    str(m.n_weeds),
                    m.distribution,
                    _fmt(r),
                    _fmt(sd),
                    _fmt(sw),
                    _fmt(m.path_length_m),
                    _fmt(m.bcp_length_m),
                    _fmt(m.pct_of_bcp),
                    _fmt(m.weeds_detected_pct),
                    _fmt(m.weeds_mowed_pct),
                    rec.status,
                ]
            )
    return rows


def _write_csv(path, comment, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(comment + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def _summarize(rows):
    """Per-(cell, planner) mean and sd of the two headline metrics.

    Failed rows count toward `failures` and are excluded from the moments.
    Cells appear in first-seen row order, which is deterministic.
    """
    groups = {}
    order = []
    for row in rows:
        key = (row[0], row[2], row[3], row[4], row[5], row[6])
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    out = []
    for key in order:
        cell = groups[key]
        ok = [r for r in cell if r[12] == "ok"]
        pct = np.array([float(r[9]) for r in ok])
        mow = np.array([float(r[11]) for r in ok])
        out.append(
            [
                key[0],
                key[1],
                key[2],
                key[3],
                key[4],
                key[5],
                str(len(cell)),
                str(len(cell) - len(ok)),
                _fmt(float(np.mean(pct)) if pct.size else float("nan")),
                _fmt(float(np.std(pct)) if pct.size else float("nan")),
                _fmt(float(np.mean(mow)) if mow.size else float("nan")),
                _fmt(float(np.std(mow)) if mow.size else float("nan")),
            ]
        )
    return out


def run_sweep(
    grid: SweepGrid,
    out_dir,
    master_seed: int = 0,
    workers: int = 1,
    pasture: Optional[PastureSpec] = None,
    mower: Optional[MowerSpec] = None,
    sigma: float = 3.0,
):
    """Run the grid and write results.csv + summary.csv under out_dir.

    Cells run independently (optionally in a process pool); the output
    order is the deterministic cell order, never completion order, so the
    CSV bytes do not depend on the worker count.
    """
    import os

    pasture = pasture or PastureSpec(100.0, 40.0)
    mower = mower or MowerSpec()
    os.makedirs(out_dir, exist_ok=True)
    jobs = [
        (cell, tuple(grid.planners), grid.seeds_per_cell, master_seed, pasture, mower, sigma)
        for cell in grid.cells()
    ]
    if workers <= 1:
        per_cell = [_cell_rows(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(_cell_rows, jobs))
    rows = [row for cell in per_cell for row in cell]
    results_path = os.path.join(out_dir, "results.csv")
    summary_path = os.path.join(out_dir, "summary.csv")
    _write_csv(results_path, SCHEMA_COMMENT, RESULT_COLUMNS, rows)
    _write_csv(summary_path, SUMMARY_COMMENT, SUMMARY_COLUMNS, _summarize(rows))
    return results_path, summary_path


def read_results(path):
    """Rows of a results.csv as dicts, comment line skipped."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        reader = csv.DictReader(fh)
        return list(reader)


# ------------------------------------------------------------ scenario JSON


def save_scenario(path, pasture: PastureSpec, mower: MowerSpec, weeds=None, generator=None):
    """Write a scenario file. Exactly one of weeds / generator is given:
    weeds is a sequence of placed weeds, generator is {n, dist, sigma, seed}.
    """
    if (weeds is None) == (generator is None):
        raise ValueError("give exactly one of weeds or generator")
    doc = {
        "pasture": {"L": pasture.length, "W": pasture.width},
        "mower": {
            "R": mower.turn_radius,
            "B": mower.implement_width,
            "v": mower.speed,
            "Sd": mower.fov_depth,
            "Sw": mower.fov_width,
            "ds": mower.step_ds,
        },
    }
    if weeds is not None:
        doc["weeds"] = [{"id": int(w.id), "x": float(w.x), "y": float(w.y)} for w in weeds]
    else:
        doc["weeds"] = {
            "n": int(generator["n"]),
            "dist": str(generator["dist"]),
            "sigma": float(generator.get("sigma", 3.0)),
            "seed": int(generator.get("seed", 0)),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_scenario(path):
    """Returns (pasture, mower, weeds, generator); one of weeds/generator
    is None, mirroring save_scenario."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    pasture = PastureSpec(float(doc["pasture"]["L"]), float(doc["pasture"]["W"]))
    m = doc["mower"]
    mower = MowerSpec(
        turn_radius=float(m["R"]),
        implement_width=float(m["B"]),
        speed=float(m["v"]),
        fov_depth=float(m["Sd"]),
        fov_width=float(m["Sw"]),
        step_ds=float(m["ds"]),
    )
    w = doc["weeds"]
    if isinstance(w, list):
        weeds = tuple(Weed(int(e["id"]), float(e["x"]), float(e["y"])) for e in w)
        return pasture, mower, weeds, None
    generator = {
        "n": int(w["n"]),
        "dist": str(w["dist"]),
        "sigma": float(w.get("sigma", 3.0)),
        "seed": int(w.get("seed", 0)),
    }
    return pasture, mower, None, generator
