"""Coverage path planning toolkit for an autonomous pasture mower."""

from .geom import Arc, Line, PathPlan, Pose, concat_plans, line_from_pose, sample_path
from .dubins import Jump, build_jump, csc_constrained, dubins_shortest
from .planners import (
    ConstraintMode,
    InvariantViolation,
    PassMode,
    PassState,
    PlannerAbort,
    PlannerKind,
    RunStats,
    bcp_reference_length,
    build_bcp,
    candidate_weeds,
    find_available_jump,
    find_valid_subpath,
    is_terminated,
    next_pass_y,
    run_planner,
)
from .world import (
    DetectedWeed,
    MowedWeed,
    MowerSpec,
    PastureSpec,
    Weed,
    WeedStatus,
    WorldState,
    advance,
    fov_contains,
    generate_weeds,
)
from .harness import (
    Metrics,
    RunConfig,
    RunRecord,
    SweepGrid,
    derive_seed,
    load_scenario,
    read_results,
    run_episode,
    run_instance,
    run_sweep,
    save_scenario,
)
from .plots import render_trajectory, render_trend

__all__ = [
    "Arc",
    "Line",
    "PathPlan",
    "Pose",
    "concat_plans",
    "line_from_pose",
    "sample_path",
    "Jump",
    "build_jump",
    "csc_constrained",
    "dubins_shortest",
    "DetectedWeed",
    "MowedWeed",
    "MowerSpec",
    "PastureSpec",
    "Weed",
    "WeedStatus",
    "WorldState",
    "advance",
    "fov_contains",
    "generate_weeds",
    "ConstraintMode",
    "InvariantViolation",
    "PassMode",
    "PassState",
    "PlannerAbort",
    "PlannerKind",
    "RunStats",
    "bcp_reference_length",
    "build_bcp",
    "candidate_weeds",
    "find_available_jump",
    "find_valid_subpath",
    "is_terminated",
    "next_pass_y",
    "run_planner",
    "Metrics",
    "RunConfig",
    "RunRecord",
    "SweepGrid",
    "derive_seed",
    "load_scenario",
    "read_results",
    "run_episode",
    "run_instance",
    "run_sweep",
    "save_scenario",
    "render_trajectory",
    "render_trend",
]
