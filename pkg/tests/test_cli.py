import csv
import json

import pytest
from typer.testing import CliRunner

from ratio_bounds import __version__
from ratio_bounds.cli import app
from ratio_bounds.core.runner import (
    EXIT_CONFIG,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_VIOLATION,
    RunConfig,
    exit_code_for,
    run_bounds,
)
from ratio_bounds.utils.progress import ProgressReporter

runner = CliRunner()


@pytest.fixture
def pcf_grid(tmp_path):
    path = tmp_path / "pcf.json"
    path.write_text(json.dumps({"params": [[2.0]], "x": [0.0, 1.0, 3.0]}), encoding="utf-8")
    return str(path)


@pytest.fixture
def bessel_grid(tmp_path):
    path = tmp_path / "bessel.json"
    path.write_text(json.dumps({"params": [1.0, 2.5], "x_range": {"lo": 0.5, "hi": 8.0, "count": 4,
                                                                  "scheme": "log"}}), encoding="utf-8")
    return str(path)


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_unknown_bound_is_a_configuration_error():
    result = runner.invoke(app, ["verify", "--bound", "pcf.nope", "--no-progress"])
    assert result.exit_code == EXIT_CONFIG


def test_malformed_grid_file_is_a_configuration_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"x": [1.0], "x_range": {"lo": 0, "hi": 1, "count": 2}}), encoding="utf-8")
    result = runner.invoke(app, ["verify", "--bound", "pcf.b21", "--grid-file", str(path), "--no-progress"])
    assert result.exit_code == EXIT_CONFIG


def test_verify_single_bound(pcf_grid, tmp_path):
    out = tmp_path / "b21.json"
    result = runner.invoke(app, ["verify", "--bound", "pcf.b21", "--grid-file", pcf_grid,
                                 "--format", "json", "--out", str(out), "--no-progress"])
    assert result.exit_code == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert [r["x"] for r in payload["records"]] == [0.0, 1.0, 3.0]
    assert all(r["status"] == "PASS" for r in payload["records"])
    assert payload["summary"]["violations"] == 0


def test_tabulate_writes_csv(bessel_grid, tmp_path):
    out = tmp_path / "table.csv"
    result = runner.invoke(app, ["tabulate", "--bound", "bessel.I.table1.(2,1)", "--grid-file", bessel_grid,
                                 "--out", str(out), "--no-progress"])
    assert result.exit_code == EXIT_OK
    with open(out, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["family", "bound_id", "params", "x", "oracle_lo", "oracle_hi", "bound",
                       "side", "margin", "sharpness", "status"]
    assert len(rows) == 1 + 2 * 4
    assert {row[2] for row in rows[1:]} == {"1", "2.5"}


def test_riccati_alias():
    result = runner.invoke(app, ["riccati", "--instance", "newbp"])
    assert result.exit_code == EXIT_OK
    assert "pcf.b03.residual" in result.stdout


def test_riccati_unknown_instance():
    result = runner.invoke(app, ["riccati", "--instance", "pcf.unknown"])
    assert result.exit_code == EXIT_CONFIG


def test_conjecture_reports_observations(tmp_path):
    grid = tmp_path / "xs.json"
    grid.write_text(json.dumps({"x": [0.0, 1.0, 2.0]}), encoding="utf-8")
    out = tmp_path / "tower.csv"
    result = runner.invoke(app, ["conjecture", "--n", "1", "--kmax", "2", "--grid-file", str(grid),
                                 "--out", str(out)])
    assert result.exit_code == EXIT_OK
    with open(out, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "k", "x", "lo", "hi", "mid", "width"]
    assert len(rows) > 1


def test_conjecture_exports_the_product_exploration(tmp_path):
    grid = tmp_path / "xs.json"
    grid.write_text(json.dumps({"x": [1.0, 2.0]}), encoding="utf-8")
    out = tmp_path / "tower.json"
    result = runner.invoke(app, ["conjecture", "--n", "1", "--kmax", "1", "--grid-file", str(grid),
                                 "--format", "json", "--out", str(out)])
    assert result.exit_code == EXIT_OK
    product = json.loads(out.read_text(encoding="utf-8"))["summary"]["product"]
    assert product["points"] > 0
    assert product["proven_constant_holds"]


def test_conjecture_without_product(tmp_path):
    grid = tmp_path / "xs.json"
    grid.write_text(json.dumps({"x": [1.0]}), encoding="utf-8")
    out = tmp_path / "tower.json"
    result = runner.invoke(app, ["conjecture", "--n", "1", "--kmax", "1", "--grid-file", str(grid),
                                 "--no-product", "--format", "json", "--out", str(out)])
    assert result.exit_code == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["summary"]["product"] is None


def test_accuracy_certifies_every_tag(tmp_path):
    out = tmp_path / "tags.json"
    result = runner.invoke(app, ["accuracy", "--format", "json", "--out", str(out)])
    assert result.exit_code == EXIT_OK, result.output
    summary = json.loads(out.read_text(encoding="utf-8"))["summary"]
    assert summary["mismatches"] == 0
    assert summary["coefficient_failures"] == 0


def test_output_directory_is_rejected(tmp_path):
    result = runner.invoke(app, ["riccati", "--instance", "newbp", "--out", str(tmp_path)])
    assert result.exit_code == EXIT_CONFIG


class TestRunBounds:
    def test_tabulate_through_the_runner(self, bessel_grid, tmp_path):
        out = tmp_path / "sweep.json"
        config = RunConfig("tabulate", bound_ids=["bessel.I.table1.(2,1)"], grid_file=bessel_grid,
                           fmt="json", out=str(out), properties=False)
        result = run_bounds(config)
        assert result.exit_code == EXIT_OK
        assert result.output_path == str(out)
        assert result.summary["bounds"] == 1
        assert len(result.reports) == 1
        assert result.reports[0].num_points == 8
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert set(payload["records"][0]) == {"family", "bound_id", "params", "x", "oracle_lo", "oracle_hi",
                                              "bound", "side", "margin", "sharpness", "status"}

    def test_progress_tally(self, pcf_grid):
        progress = ProgressReporter(enabled=False)
        result = run_bounds(RunConfig("verify", bound_ids=["pcf.b21", "pcf.b12"], grid_file=pcf_grid), progress)
        assert result.exit_code == EXIT_OK
        assert progress.bounds_done == progress.bounds_total == 2
        assert progress.tally.total == 6
        assert progress.tally.passed == 6
        assert progress.stage == "Stage 5/5 · Export"

    def test_unknown_command(self):
        assert run_bounds(RunConfig("plot")).exit_code == EXIT_CONFIG

    def test_missing_grid_file(self, tmp_path):
        config = RunConfig("verify", bound_ids=["pcf.b21"], grid_file=str(tmp_path / "absent.json"))
        assert run_bounds(config).exit_code == EXIT_CONFIG

    def test_no_export_without_out(self, pcf_grid):
        result = run_bounds(RunConfig("verify", bound_ids=["pcf.b21"], grid_file=pcf_grid))
        assert result.exit_code == EXIT_OK
        assert result.output_path is None
        assert result.checks == []


@pytest.mark.parametrize("verdicts, inconclusive, expected", [
    ([True, True], False, EXIT_OK),
    ([True, False], False, EXIT_VIOLATION),
    ([True, False], True, EXIT_VIOLATION),
    ([True], True, EXIT_INCONCLUSIVE),
])
def test_exit_code_for(verdicts, inconclusive, expected):
    assert exit_code_for(verdicts, inconclusive) == expected
