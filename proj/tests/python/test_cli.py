"""End-to-end CLI checks: JSON reports, trajectory CSV, exit codes."""

import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("SPCP_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="SPCP_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_check_json(tmp_path):
    pattern = tmp_path / "tetra.pat"
    assert run("example", "tetrahedron", "-o", str(pattern)).returncode == 0

    result = run("check", str(pattern))
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["feasibility"]["feasible"] is True
    assert report["feasibility"]["method"] == "exhaustive"
    assert report["feasibility"]["worst_slack"] == pytest.approx(4 * math.pi / 3)
    assert report["validation"]["valid"] is True


def test_solve_report_roundtrip(tmp_path):
    pattern = tmp_path / "tetra.pat"
    run("example", "tetrahedron", "-o", str(pattern))
    csv_path = tmp_path / "trajectory.csv"

    result = run("solve", str(pattern), "--method", "both", "--trajectory", str(csv_path))
    assert result.returncode == 0
    report = json.loads(result.stdout)
    for method in ("flow", "newton"):
        assert report[method]["converged"] is True
        for vertex in report[method]["vertices"]:
            assert vertex["r"] == pytest.approx(math.acos(1 / 3), abs=1e-8)
    assert report["method_agreement_K"] < 1e-6

    lines = csv_path.read_text().splitlines()
    assert lines[0] == "t,residual,energy,K_1,K_2,K_3,K_4"
    energies = [float(line.split(",")[2]) for line in lines[1:]]
    assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))

    # Feed the solved radii back through report mode: curvatures match the
    # targets to the solver tolerance.
    radii_lines = "\n".join(
        f"  {v['id']} {v['r']:.17g}" for v in report["newton"]["vertices"]
    )
    with_radii = pattern.read_text() + "\nradii:\n" + radii_lines + "\n"
    pattern2 = tmp_path / "solved.pat"
    pattern2.write_text(with_radii)
    reported = json.loads(run("report", str(pattern2)).stdout)
    assert reported["state"]["residual"] < 1e-10
    for vertex in reported["state"]["vertices"]:
        assert vertex["L"] == pytest.approx(2 * math.pi / 3, abs=1e-10)
        assert vertex["alpha"] == pytest.approx(2 * math.pi, abs=1e-9)
    for face in reported["state"]["faces"]:
        assert face["cone_angle"] == pytest.approx(2 * math.pi, abs=1e-12)


def test_report_matches_initial_flow_residual(tmp_path):
    # Reporting at r = pi/4 (K = 0) shows the same residual the flow starts
    # from at the default initial guess.
    pattern = tmp_path / "tetra.pat"
    run("example", "tetrahedron", "-o", str(pattern))
    csv_path = tmp_path / "t.csv"
    solve = json.loads(
        run(
            "solve", str(pattern), "--method", "flow", "--trajectory", str(csv_path)
        ).stdout
    )
    first_residual = float(csv_path.read_text().splitlines()[1].split(",")[1])

    with_radii = pattern.read_text() + "\nradii:\n" + "\n".join(
        f"  {v} pi/4" for v in ("a", "b", "c", "d")
    )
    pattern2 = tmp_path / "quarter.pat"
    pattern2.write_text(with_radii + "\n")
    reported = json.loads(run("report", str(pattern2)).stdout)
    assert reported["state"]["residual"] == pytest.approx(first_residual, rel=1e-12)
    for vertex in reported["state"]["vertices"]:
        assert abs(vertex["L"] - 2 * math.pi / 3) > 0.1  # pi/4 is not the solution


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.pat"
    bad.write_text("vertices: a b\nedges:\n e a b oops\n")
    assert run("check", str(bad)).returncode == 2

    saturated = tmp_path / "saturated.pat"
    saturated.write_text(
        "vertices: a b\nedges:\n e a b pi/2\ntargets:\n a pi/2\n b pi/2\n"
    )
    assert run("check", str(saturated)).returncode == 1
    infeasible_solve = run("solve", str(saturated), "--method", "flow", "--max-time", "50")
    assert infeasible_solve.returncode == 1
    report = json.loads(infeasible_solve.stdout)
    assert report["flow"]["converged"] is False
    assert report["feasibility"]["feasible"] is False
    assert report["feasibility"]["witness"] == ["a", "b"]


def test_precision_env(tmp_path):
    pattern = tmp_path / "tetra.pat"
    run("example", "tetrahedron", "-o", str(pattern))
    env = dict(os.environ, SPCP_PRECISION="5")
    result = subprocess.run(
        [CLI, "check", str(pattern)], capture_output=True, text=True, env=env
    )
    report = json.loads(result.stdout)
    # 4 pi / 3 rounded to 5 significant digits.
    assert report["feasibility"]["worst_slack"] == 4.1888


def test_seeded_solve(tmp_path):
    pattern = tmp_path / "octa.pat"
    run("example", "octahedron", "-o", str(pattern))
    first = run("solve", str(pattern), "--method", "newton", "--seed", "42")
    second = run("solve", str(pattern), "--method", "newton", "--seed", "42")
    assert first.returncode == 0
    assert json.loads(first.stdout)["config"]["initial_K"] == json.loads(second.stdout)[
        "config"
    ]["initial_K"]
