"""Tests for JSON and CSV report files."""

import csv
import json


def _report():
    from src.analysis import regularized_mesh_size
    from src.forest import new_forest, random_refinement
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(2))
    tria = random_refinement(tria, 10, seed=5)
    return tria, regularized_mesh_size(tria)


def test_report_json_uses_to_dict(tmp_path):
    from src.io import write_report_json

    tria, report = _report()
    path = tmp_path / "nested" / "report.json"
    write_report_json(report, path)
    data = json.loads(path.read_text())
    assert data["gamma"] == report.gamma
    assert len(data["leaf_ids"]) == len(tria)


def test_plain_dicts_are_written_as_is(tmp_path):
    from src.io import write_report_json

    write_report_json({"suite": "lemmas", "ok": True}, tmp_path / "r.json")
    assert json.loads((tmp_path / "r.json").read_text()) == {"suite": "lemmas", "ok": True}


def test_leaf_csv_has_one_row_per_leaf(tmp_path):
    from src.io import write_report_csv

    tria, report = _report()
    write_report_csv(report, tmp_path / "leaves.csv")
    with open(tmp_path / "leaves.csv") as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == ["id", "gen", "level", "type", "diam", "h_exponent"]
    assert len(rows) == len(tria)
    assert [int(r["id"]) for r in rows] == tria.leaves()
    assert all(float(r["diam"]) > 0 for r in rows)


def test_histogram_csv_is_sorted(tmp_path):
    from src.io import write_histogram_csv

    write_histogram_csv({"1": {"2": 3, "0": 5}, 0: {1: 7}}, tmp_path / "jumps.csv")
    with open(tmp_path / "jumps.csv") as f:
        rows = list(csv.reader(f))
    assert rows == [
        ["macro_dimension", "jump", "count"],
        ["0", "1", "7"],
        ["1", "0", "5"],
        ["1", "2", "3"],
    ]
