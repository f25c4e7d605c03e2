"""Command line interface: flags, exit codes, artifacts."""

import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

import mowplan.cli as cli
from mowplan.harness import Metrics, RunRecord, save_scenario
from mowplan.world import MowerSpec, PastureSpec, Weed


def run_cli(argv):
    """main() with argparse SystemExit flattened to an exit code."""
    try:
        return cli.main(argv)
    except SystemExit as exc:
        return exc.code


def test_run_defaults(capsys):
    assert run_cli(["run", "--seed", "11"]) == 0
    out = capsys.readouterr().out
    assert "planner=JUMP_LOW" in out and "status=ok" in out
    assert "pct_of_bcp=" in out and "weeds_mowed_pct=100.000" in out


def test_run_writes_svg_map(tmp_path, capsys):
    svg = tmp_path / "map.svg"
    code = run_cli(
        ["run", "--planner", "SNAKE_STATIC", "--n-weeds", "20", "--seed", "4", "--svg", str(svg)]
    )
    assert code == 0
    root = ET.parse(svg).getroot()
    assert root.tag.endswith("svg")
    tags = [e.tag.split("}")[-1] for e in root.iter()]
    assert "polyline" in tags and tags.count("circle") == 20


def test_run_rejects_bad_distribution():
    assert run_cli(["run", "--dist", "pareto"]) == 2


def test_run_rejects_bad_mower_geometry():
    assert run_cli(["run", "--B", "-1"]) == 2


def test_run_failure_exits_1(monkeypatch, capsys):
    metrics = Metrics(
        planner="JUMP_LOW",
        seed=0,
        n_weeds=5,
        distribution="uniform",
        path_length_m=12.0,
        bcp_length_m=100.0,
        pct_of_bcp=12.0,
        weeds_detected_pct=20.0,
        weeds_mowed_pct=0.0,
        wall_time_s=0.1,
    )
    monkeypatch.setattr(
        cli, "run_episode", lambda config: (RunRecord(metrics, "abort"), None, None)
    )
    assert run_cli(["run"]) == 1
    assert "status=abort" in capsys.readouterr().out


def test_no_subcommand_is_usage_error():
    assert run_cli([]) == 2


def test_scenario_with_explicit_weeds(tmp_path, capsys):
    scn = tmp_path / "scn.json"
    save_scenario(
        scn,
        PastureSpec(50.0, 20.0),
        MowerSpec(turn_radius=1.5),
        weeds=(Weed(0, 10.0, 5.0), Weed(1, 30.0, 12.0)),
    )
    assert run_cli(["run", "--planner", "BCP_TSP", "--json-scenario", str(scn)]) == 0
    out = capsys.readouterr().out
    assert "n_weeds=2" in out and "dist=explicit" in out and "status=ok" in out


def test_scenario_generator_pins_field(tmp_path, capsys):
    # the field comes from the scenario seed, so --seed cannot change a
    # deterministic planner's path
    scn = tmp_path / "scn.json"
    save_scenario(
        scn,
        PastureSpec(100.0, 40.0),
        MowerSpec(),
        generator={"n": 30, "dist": "uniform", "sigma": 3.0, "seed": 9},
    )
    lengths = []
    for seed in ("1", "2"):
        assert run_cli(["run", "--json-scenario", str(scn), "--seed", seed]) == 0
        out = capsys.readouterr().out
        lengths.append(out.split("path_length_m=")[1].split()[0])
        assert "n_weeds=30" in out
    assert lengths[0] == lengths[1]


def test_scenario_missing_file_is_usage_error(tmp_path):
    assert run_cli(["run", "--json-scenario", str(tmp_path / "nope.json")]) == 2


def _write_grid(path):
    path.write_text(
        '{"n_weeds": [20], "distributions": ["uniform"], '
        '"seeds_per_cell": 2, "planners": ["BCP", "JUMP_LOW"]}'
    )


def test_sweep_and_plot_pipeline(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    _write_grid(grid)
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    assert run_cli(["sweep", "--grid", str(grid), "--out", str(out1), "--workers", "2"]) == 0
    assert run_cli(["sweep", "--grid", str(grid), "--out", str(out2)]) == 0
    assert (out1 / "results.csv").read_bytes() == (out2 / "results.csv").read_bytes()

    chart = tmp_path / "trend.svg"
    assert run_cli(["plot", "--csv", str(out1 / "results.csv"), "--x", "n_weeds", "--out", str(chart)]) == 0
    root = ET.parse(chart).getroot()
    xmin, xmax = float(root.get("data-xmin")), float(root.get("data-xmax"))
    ymin, ymax = float(root.get("data-ymin")), float(root.get("data-ymax"))
    pts = [e for e in root.iter() if e.get("class") == "pt"]
    assert len(pts) == 2  # one mean point per planner at the single x
    for pt in pts:
        assert xmin <= float(pt.get("data-x")) <= xmax
        assert ymin <= float(pt.get("data-y")) <= ymax


def test_sweep_seeds_override(tmp_path):
    grid = tmp_path / "grid.json"
    _write_grid(grid)
    out = tmp_path / "s"
    assert run_cli(["sweep", "--grid", str(grid), "--seeds", "1", "--out", str(out)]) == 0
    lines = (out / "results.csv").read_text().splitlines()
    assert len(lines) == 2 + 1 * 2
    assert run_cli(["sweep", "--grid", str(grid), "--seeds", "0", "--out", str(out)]) == 2


def test_sweep_rejects_bad_grid(tmp_path):
    missing = tmp_path / "nope.json"
    assert run_cli(["sweep", "--grid", str(missing), "--out", str(tmp_path / "o")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"planners": ["NOT_A_PLANNER"]}')
    assert run_cli(["sweep", "--grid", str(bad), "--out", str(tmp_path / "o")]) == 2


def test_plot_rejects_unknown_field(tmp_path):
    grid = tmp_path / "grid.json"
    _write_grid(grid)
    out = tmp_path / "s"
    run_cli(["sweep", "--grid", str(grid), "--seeds", "1", "--out", str(out)])
    code = run_cli(["plot", "--csv", str(out / "results.csv"), "--x", "bogus", "--out", str(tmp_path / "z.svg")])
    assert code == 2


def test_plot_rejects_empty_csv(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# results schema v1\nplanner,seed,n_weeds,distribution,R,Sd,Sw,path_length_m,bcp_length_m,pct_of_bcp,weeds_detected_pct,weeds_mowed_pct,status\n")
    assert run_cli(["plot", "--csv", str(empty), "--x", "n_weeds", "--out", str(tmp_path / "z.svg")]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "mowplan", "run", "--planner", "BCP", "--n-weeds", "5", "--seed", "1"],
        capture_output=True,
        text=True,
        cwd=tmp_path,
    )
    assert proc.returncode == 0
    assert "status=ok" in proc.stdout and "pct_of_bcp=100.000" in proc.stdout
