"""Tests for the command-line interface."""

import json
from unittest.mock import patch

import pytest
from click.testing import CliRunner


def _invoke(*args):
    from bisectd import cli

    return CliRunner().invoke(cli, list(args))


def _stats_line(output):
    return json.loads(next(line for line in output.splitlines() if line.startswith("{")))


# ── seed / refine ────────────────────────────────────────────────────────────


def test_seed_writes_a_document(tmp_path):
    result = _invoke("seed", "kuhn", "--dim", "3", "--out", str(tmp_path / "cube.json"))
    assert result.exit_code == 0, result.output
    assert "[OK] Seed 'kuhn3': 6 simplices, 8 vertices" in result.output
    assert (tmp_path / "cube.json").exists()


def test_refine_prints_stats(tmp_path):
    out = tmp_path / "mesh.json"
    result = _invoke("refine", "kuhn:2", "--steps", "2", "--out", str(out), "--format", "json", "--format", "vtk")
    assert result.exit_code == 0, result.output
    assert "[OK] Refinement completed" in result.output
    stats = _stats_line(result.output)
    assert stats["leaves"] == 8
    assert out.exists()
    assert out.with_suffix(".vtk").exists()


def test_refine_from_a_seed_file(tmp_path):
    _invoke("seed", "square", "--diagonal", "anti", "--out", str(tmp_path / "square.json"))
    result = _invoke("refine", str(tmp_path / "square.json"), "--onboard", "--random", "5", "--out", str(tmp_path / "m.json"))
    assert result.exit_code == 0, result.output
    assert _stats_line(result.output)["leaves"] >= 8


def test_two_scripts_are_a_usage_error(tmp_path):
    result = _invoke("refine", "kuhn:2", "--steps", "1", "--random", "3", "--out", str(tmp_path / "m.json"))
    assert result.exit_code == 1
    assert "[ERROR]" in result.output


def test_uncolored_seed_without_onboarding_exits_1(tmp_path):
    result = _invoke("refine", "square:main", "--steps", "1", "--out", str(tmp_path / "m.json"))
    assert result.exit_code == 1
    assert "--onboard" in result.output


def test_budget_exhaustion_exits_3(tmp_path):
    result = _invoke("refine", "kuhn:2", "--random", "1", "--budget", "1", "--out", str(tmp_path / "m.json"))
    assert result.exit_code == 3
    assert "budget" in result.output


# ── analyze / verify ─────────────────────────────────────────────────────────


@pytest.fixture
def mesh_file(tmp_path):
    path = tmp_path / "mesh.json"
    result = _invoke("refine", "kuhn:2", "--random", "25", "--rng", "3", "--out", str(path))
    assert result.exit_code == 0, result.output
    return path


def test_analyze_writes_reports(mesh_file, tmp_path):
    out = tmp_path / "report"
    result = _invoke("analyze", str(mesh_file), "--out", str(out), "--format", "json", "--format", "csv")
    assert result.exit_code == 0, result.output
    assert "[OK] gamma=" in result.output
    assert out.with_suffix(".json").exists()
    assert out.with_suffix(".csv").exists()


def test_analyze_aux_exports_layers(mesh_file, tmp_path):
    import meshio

    out = tmp_path / "aux"
    result = _invoke("analyze", str(mesh_file), "--aux", "--depth", "4", "--out", str(out), "--format", "vtk")
    assert result.exit_code == 0, result.output
    mesh = meshio.read(str(out.with_suffix(".vtk")))
    assert "layer" in mesh.cell_data


def test_verify_passes(mesh_file, tmp_path):
    out = tmp_path / "suite.json"
    result = _invoke("verify", str(mesh_file), "--suite", "lemmas", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "[OK] Suite 'lemmas' passed" in result.output
    assert json.loads(out.read_text())["ok"] is True


def test_failed_checks_exit_2(mesh_file):
    from src.pipeline import SuiteResult

    failed = SuiteResult("grading", ok=False, failures=["level-estimate"])
    with patch("src.pipeline.BisectionPipeline.verify", return_value=failed):
        result = _invoke("verify", str(mesh_file), "--suite", "grading")
    assert result.exit_code == 2
    assert "[ERROR] Check 'level-estimate' failed" in result.output


def test_invariant_violation_exits_2(mesh_file, tmp_path):
    from src.core import InvariantViolation

    with patch("src.pipeline.BisectionPipeline.analyze", side_effect=InvariantViolation("mesh-size-grading", "jump")):
        result = _invoke("analyze", str(mesh_file), "--out", str(tmp_path / "r"))
    assert result.exit_code == 2
    assert "mesh-size-grading" in result.output


def test_missing_input_exits_1(tmp_path):
    result = _invoke("verify", str(tmp_path / "nope.json"), "--suite", "lemmas")
    assert result.exit_code == 1


# ── Entry point ──────────────────────────────────────────────────────────────


def test_run_maps_usage_errors_to_1():
    from bisectd import run

    with pytest.raises(SystemExit) as exc:
        run(["refine"])
    assert exc.value.code == 1


def test_run_exits_0_on_success(tmp_path):
    from bisectd import run

    with pytest.raises(SystemExit) as exc:
        run(["seed", "simplex", "--dim", "3", "--out", str(tmp_path / "s.json")])
    assert exc.value.code == 0
