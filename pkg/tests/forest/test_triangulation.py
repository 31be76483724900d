"""Tests for triangulation views and the lattice operations."""

import numpy as np
import pytest


def _kuhn(d=2):
    from src.forest import new_forest
    from src.seed import kuhn_cube

    return new_forest(kuhn_cube(d))


def test_views_report_generations_levels_and_volume():
    from src.forest import uniform_refine

    forest, tria = _kuhn()
    fine = uniform_refine(tria, 3)
    assert len(fine) == 16
    assert set(fine.generations().tolist()) == {3}
    assert set(fine.levels().tolist()) == {2}
    assert fine.total_volume() == 1
    assert repr(fine) == "Triangulation(d=2, leaves=16)"


def test_vertex_star_and_edges():
    forest, tria = _kuhn()
    star = tria.vertex_star()
    assert sorted(len(v) for v in star.values()) == [1, 1, 2, 2]
    edges = tria.edges()
    assert len(edges) == 5
    shared = [key for key, owners in edges.items() if len(owners) == 2]
    assert len(shared) == 1
    assert tria.edge_patch(*shared[0]) == [0, 1]


def test_forest_mask_round_trips_through_leaves_of_mask():
    from src.forest import leaves_of_mask, random_refinement

    forest, tria = _kuhn()
    fine = random_refinement(tria, 25, seed=2)
    mask = fine.forest_mask()
    assert mask[list(forest.roots)].all()
    assert leaves_of_mask(forest, mask) == fine


def test_join_and_meet():
    from src.forest import bisect_with_closure, join, meet, random_refinement

    forest, tria = _kuhn()
    t1 = random_refinement(tria, 15, seed=1)
    t2 = random_refinement(bisect_with_closure(tria, 0), 15, seed=9)
    upper = join(t1, t2)
    lower = meet(t1, t2)
    assert t1.is_refinement(upper) and t2.is_refinement(upper)
    assert lower.is_refinement(t1) and lower.is_refinement(t2)
    assert tria.is_refinement(lower)
    assert upper.total_volume() == lower.total_volume() == 1
    assert join(t1, t1) == t1


def test_lattice_laws_on_one_forest():
    from src.forest import join, meet, random_refinement

    forest, roots = _kuhn()
    a, b, c = (random_refinement(roots, 20, seed=s) for s in (0, 1, 2))
    for t in (a, b, c):
        assert meet(t, t) == t
        assert join(t, t) == t
        assert meet(t, roots) == roots
        assert join(t, roots) == t
    assert join(a, b) == join(b, a)
    assert meet(a, b) == meet(b, a)
    assert join(a, meet(b, c)) == meet(join(a, b), join(a, c))
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))


def test_lattice_across_forests_raises():
    from src.core import ForestMismatchError

    _, t1 = _kuhn()
    _, t2 = _kuhn()
    with pytest.raises(ForestMismatchError):
        t1.join(t2)


def test_triangulation_equality_and_hash():
    from src.forest import Triangulation

    forest, tria = _kuhn()
    same = Triangulation(forest, np.array([1, 0]))
    assert same == tria
    assert hash(same) == hash(tria)
    assert 0 in tria and 7 not in tria
