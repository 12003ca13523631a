import csv
import json

import pytest

from ratio_bounds.core.errors import ConfigError
from ratio_bounds.utils.export import export_records, format_float, sort_records
from ratio_bounds.utils.validators import Validators


def _write_grid(tmp_path, payload, name="grid.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestGridFile:
    def test_explicit_x_is_sorted_and_deduplicated(self, tmp_path):
        result = Validators.validate_grid_file(_write_grid(tmp_path, {"params": [[1.5]], "x": [2.0, 0.5, 2.0]}))
        assert result['valid']
        assert result['x'] == [0.5, 2.0]
        assert result['params'] == [(1.5,)]
        assert result['scheme'] == "mixed"

    def test_scalar_params_are_wrapped(self, tmp_path):
        result = Validators.validate_grid_file(_write_grid(tmp_path, {"params": [0.5, 1.0]}))
        assert result['valid']
        assert result['params'] == [(0.5,), (1.0,)]
        assert result['x'] is None

    def test_log_range(self, tmp_path):
        result = Validators.validate_grid_file(
            _write_grid(tmp_path, {"x_range": {"lo": 0.01, "hi": 100.0, "count": 5, "scheme": "log"}}))
        assert result['valid']
        assert result['scheme'] == "log"
        assert len(result['x']) == 5
        assert result['x'][0] == pytest.approx(0.01)
        assert result['x'][2] == pytest.approx(1.0)
        assert result['x'][-1] == pytest.approx(100.0)

    def test_relative_path_uses_base_directory(self, tmp_path):
        _write_grid(tmp_path, {"x": [1.0]})
        result = Validators.validate_grid_file("grid.json", base_directory=str(tmp_path))
        assert result['valid']
        assert result['resolved_path'] == str(tmp_path / "grid.json")

    @pytest.mark.parametrize("payload, fragment", [
        ({"x": [1.0], "step": 2}, "Unknown grid keys"),
        ({"x": [1.0], "x_range": {"lo": 0, "hi": 1, "count": 2}}, "not both"),
        ({"x_range": {"lo": 0.0, "hi": 1.0, "count": 3, "scheme": "log"}}, "lo > 0"),
        ({"x_range": {"lo": 0.0, "hi": 1.0, "count": 0}}, "count must be >= 1"),
        ({"x_range": {"lo": 2.0, "hi": 1.0, "count": 3}}, "lo <= hi"),
        ({"x_range": {"lo": 0.0, "hi": 1.0}}, "missing count"),
        ({"x_range": {"lo": 0.0, "hi": 1.0, "count": 3, "scheme": "cubic"}}, "unknown x_range scheme"),
        ({"x": []}, "non-empty"),
        ({"x": [1.0, "two"]}, "non-numeric"),
        ({"params": [[1.0, 2.0], [3.0]]}, "same length"),
        ([1.0, 2.0], "JSON object"),
    ])
    def test_rejects_malformed_grids(self, tmp_path, payload, fragment):
        result = Validators.validate_grid_file(_write_grid(tmp_path, payload))
        assert not result['valid']
        assert fragment in result['error_message']

    def test_missing_file(self, tmp_path):
        result = Validators.validate_grid_file(str(tmp_path / "absent.json"))
        assert not result['valid']
        assert "File not found" in result['error_message']

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        result = Validators.validate_grid_file(str(path))
        assert not result['valid']
        assert "Invalid grid file" in result['error_message']


class TestOutputPath:
    def test_directory_is_rejected(self, tmp_path):
        result = Validators.validate_output_path(str(tmp_path), "csv")
        assert not result['valid']
        assert "directory" in result['error_message']

    def test_unknown_format(self, tmp_path):
        result = Validators.validate_output_path(str(tmp_path / "out.xlsx"), "xlsx")
        assert not result['valid']

    def test_parent_is_created(self, tmp_path):
        target = tmp_path / "nested" / "out.json"
        result = Validators.validate_output_path(str(target), "JSON")
        assert result['valid']
        assert (tmp_path / "nested").is_dir()
        assert result['resolved_path'] == str(target)


ROWS = [
    {"family": "pcf", "bound_id": "pcf.b21", "params": [2.0], "x": 1.0, "bound": 0.1, "converged": True},
    {"family": "bessel", "bound_id": "bessel.I.trig", "params": [0.5], "x": 2.0, "bound": 1 / 3,
     "converged": False},
    {"family": "pcf", "bound_id": "pcf.b21", "params": [2.0], "x": -1.0, "bound": None, "converged": True},
]


class TestExport:
    def test_float_format_round_trips(self):
        assert float(format_float(1 / 3)) == 1 / 3
        assert format_float(0.1) == "0.10000000000000001"

    def test_sort_order(self):
        ordered = sort_records(ROWS)
        assert [(r["family"], r["x"]) for r in ordered] == [("bessel", 2.0), ("pcf", -1.0), ("pcf", 1.0)]

    def test_csv_cells(self, tmp_path):
        path = export_records(ROWS, str(tmp_path / "out.csv"), "csv",
                              columns=("family", "bound_id", "params", "x", "bound", "converged"))
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["family", "bound_id", "params", "x", "bound", "converged"]
        assert rows[1] == ["bessel", "bessel.I.trig", "0.5", "2", "0.33333333333333331", "false"]
        assert rows[2][4] == ""
        assert rows[3][5] == "true"

    def test_multi_parameter_cells_join_with_semicolons(self, tmp_path):
        rows = [{"family": "gauss", "bound_id": "g", "params": [1.0, 2.0, 3.5], "x": 0.5}]
        path = export_records(rows, str(tmp_path / "g.csv"), "csv", columns=("params", "x"))
        with open(path, newline="", encoding="utf-8") as f:
            assert list(csv.reader(f))[1] == ["1;2;3.5", "0.5"]

    def test_json_payload(self, tmp_path):
        summary = {"bounds": 2, "min_margin": float("inf"), "worst": float("nan")}
        path = export_records(ROWS, str(tmp_path / "out.json"), "json", summary=summary)
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
        assert set(payload) == {"summary", "records"}
        assert payload["summary"] == {"bounds": 2, "min_margin": "inf", "worst": None}
        assert len(payload["records"]) == 3
        assert payload["records"][0]["family"] == "bessel"
        assert payload["records"][0]["bound"] == 1 / 3

    def test_identical_runs_give_identical_bytes(self, tmp_path):
        a = export_records(ROWS, str(tmp_path / "a.csv"), "csv")
        b = export_records(list(reversed(ROWS)), str(tmp_path / "b.csv"), "csv")
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_unknown_format_raises(self, tmp_path):
        with pytest.raises(ConfigError):
            export_records(ROWS, str(tmp_path / "out.xml"), "xml")
