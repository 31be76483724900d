"""Tests for the structural scanner."""

import pytest


@pytest.mark.parametrize("d, count", [(2, 120), (3, 40)])
def test_scan_passes_on_closure_refinements(d, count):
    from src.analysis import scan_lemmas
    from src.forest import new_forest, random_refinement
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(d))
    report = scan_lemmas(random_refinement(tria, count, seed=count))
    assert report.ok, report.violations[:3]
    assert report.checked["distinct-vertex-generations"] > 0
    assert report.checked["subsimplex-consistency"] > 0


def test_scan_can_be_restricted_to_named_checks():
    from src.analysis import scan_lemmas
    from src.forest import new_forest, uniform_refine
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(2))
    report = scan_lemmas(uniform_refine(tria, 3), subsimplices=False, checks=["type-one-edges"])
    assert set(report.checked) <= {"type-one-edges"}
    assert report.to_dict()["ok"] is True


def test_report_records_failures():
    from src.analysis import LemmaReport

    report = LemmaReport()
    report.fail("facet-generation", 3, "made up")
    assert not report.ok
    assert report.to_dict()["violations"] == [{"check": "facet-generation", "node": 3, "detail": "made up"}]


@pytest.mark.parametrize("d, count", [(2, 60), (3, 30)])
def test_scan_leaves_the_forest_untouched(d, count):
    from src.analysis import scan_lemmas
    from src.forest import new_forest, random_refinement
    from src.seed import kuhn_cube

    forest, tria = new_forest(kuhn_cube(d))
    fine = random_refinement(tria, count, seed=5)
    nodes, vertices = len(forest), len(forest.vertices)
    report = scan_lemmas(fine, subsimplices=False, checks=["type-d-simplex"])
    assert report.ok, report.violations[:3]
    assert report.checked["type-d-simplex"] == len(fine.edges())
    assert (len(forest), len(forest.vertices)) == (nodes, vertices)
