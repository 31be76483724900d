"""Tests for initial triangulations and their validation."""

import pytest


def _points(*coords):
    from src.core import DyadicPoint

    return [DyadicPoint.from_ints(c) for c in coords]


# ── Builtin seeds ────────────────────────────────────────────────────────────


@pytest.mark.parametrize("d, count", [(2, 2), (3, 6), (4, 24)])
def test_kuhn_cube_has_d_factorial_simplices(d, count):
    from src.seed import kuhn_cube, validate_coloring, validate_seed

    seed = kuhn_cube(d)
    assert len(seed.simplices) == count
    assert len(seed.points) == 2**d
    assert seed.is_colored
    assert seed.name == f"kuhn{d}"
    validate_seed(seed)
    assert validate_coloring(seed) is None


@pytest.mark.parametrize("d", [2, 3, 4])
def test_d_uniform_steps_on_kuhn_cube_fill_the_half_integer_lattice(d):
    from math import factorial

    from src.forest import is_conforming, new_forest, uniform_refine
    from src.seed import kuhn_cube

    forest, tria = new_forest(kuhn_cube(d))
    fine = uniform_refine(tria, d)
    assert len(fine) == factorial(d) * 2**d
    vertex_ids = fine.vertex_ids()
    assert len(vertex_ids) == 3**d
    assert all(forest.vertices.point(v).is_on_lattice(1) for v in vertex_ids)
    assert is_conforming(fine)[0]


def test_kuhn_cube_dimension_range():
    from src.seed import kuhn_cube

    with pytest.raises(ValueError):
        kuhn_cube(1)
    with pytest.raises(ValueError):
        kuhn_cube(9)


def test_initial_generations_are_negative_colors():
    from src.seed import assign_initial_generations, kuhn_cube

    # corners in product order: (0,0), (0,1), (1,0), (1,1)
    assert assign_initial_generations(kuhn_cube(2)) == [-2, 0, 0, -1]


def test_single_kuhn_simplex():
    from src.seed import single_kuhn_simplex

    seed = single_kuhn_simplex(3)
    assert seed.simplices == [(0, 1, 2, 3)]
    assert seed.colors == [3, 0, 1, 2]
    with pytest.raises(ValueError):
        single_kuhn_simplex(1)


def test_square_seed_is_uncolored():
    from src.seed import square_seed

    seed = square_seed("anti")
    assert not seed.is_colored
    assert len(seed.simplices) == 2
    with pytest.raises(ValueError):
        square_seed("both")


# ── Validation ───────────────────────────────────────────────────────────────


def test_validate_seed_rejects_degenerate_simplex():
    from src.core import SeedError
    from src.seed import SeedTriangulation, validate_seed

    seed = SeedTriangulation(_points((0, 0), (1, 1), (2, 2)), [(0, 1, 2)])
    with pytest.raises(SeedError, match="degenerate"):
        validate_seed(seed)


def test_validate_seed_rejects_hanging_seed_vertex():
    from src.core import SeedError
    from src.seed import SeedTriangulation, validate_seed

    points = _points((0, 0), (2, 0), (0, 2), (1, 0), (1, -1))
    seed = SeedTriangulation(points, [(0, 1, 2), (0, 3, 4)])
    with pytest.raises(SeedError, match="lies on simplex"):
        validate_seed(seed)


def test_validate_seed_rejects_overused_facet_and_bad_simplices():
    from src.core import SeedError
    from src.seed import SeedTriangulation, validate_seed

    points = _points((0, 0), (1, 0), (0, 1), (0, -1), (1, 1))
    with pytest.raises(SeedError, match="more than two"):
        validate_seed(SeedTriangulation(points, [(0, 1, 2), (0, 1, 3), (0, 1, 4)]))
    with pytest.raises(SeedError):
        validate_seed(SeedTriangulation(points, [(0, 1)]))
    with pytest.raises(SeedError):
        validate_seed(SeedTriangulation(points, [(0, 1, 7)]))
    with pytest.raises(SeedError):
        validate_seed(SeedTriangulation(points, [(0, 1, 2)], colors=[0, 1]))


def test_validate_coloring_reports_missing_colors():
    from src.core import SeedError
    from src.seed import SeedTriangulation, validate_coloring

    seed = SeedTriangulation(_points((0, 0), (1, 0), (0, 1)), [(0, 1, 2)], colors=[0, 0, 1])
    violation = validate_coloring(seed)
    assert violation.simplex == 0
    assert violation.missing == (2,)
    with pytest.raises(SeedError):
        validate_coloring(SeedTriangulation(seed.points, seed.simplices))
