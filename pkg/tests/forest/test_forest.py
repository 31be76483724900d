"""Tests for the master forest."""

from fractions import Fraction

import pytest


def _kuhn(d=2):
    from src.forest import new_forest
    from src.seed import kuhn_cube

    return new_forest(kuhn_cube(d))


def test_roots_have_generation_zero():
    forest, tria = _kuhn(3)
    assert forest.roots == tuple(range(6))
    assert all(forest.node_generation[r] == 0 for r in forest.roots)
    assert len(tria) == 6
    assert forest.domain_volume() == 1


def test_bisect_is_idempotent_and_children_are_younger():
    forest, _ = _kuhn()
    c1, c2 = forest.bisect(0)
    assert forest.bisect(0) == (c1, c2)
    assert c1 > 0 and c2 > 0
    assert forest.parent[c1] == forest.parent[c2] == 0
    assert forest.node_generation[c1] == 1
    mid = forest.node_vertices[c1][0]
    assert forest.vertices.generation(mid) == 1
    a, b = forest.bse[0]
    assert a not in forest.node_vertices[c1]
    assert b not in forest.node_vertices[c2]
    assert forest.node(c1).root == 0
    assert not forest.node(c1).is_root


def test_shared_diagonal_gives_one_midpoint():
    forest, _ = _kuhn()
    m0 = forest.node_vertices[forest.bisect(0)[0]][0]
    m1 = forest.node_vertices[forest.bisect(1)[0]][0]
    assert m0 == m1
    assert forest.vertices.point(m0).to_fractions() == (Fraction(1, 2), Fraction(1, 2))


def test_node_volume_halves_each_generation():
    forest, _ = _kuhn()
    c1, c2 = forest.bisect(0)
    g1, _ = forest.bisect(c1)
    assert forest.node_volume(c1) == forest.node_volume(c2) == Fraction(1, 4)
    assert forest.node_volume(g1) == Fraction(1, 8)


def test_level_type_and_ancestors():
    forest, _ = _kuhn()
    node = 0
    for _ in range(5):
        node = forest.bisect(node)[0]
    assert forest.node_generation[node] == 5
    assert forest.level(node) == 3
    assert forest.type(node) == 1
    assert forest.ancestor_at_generation(node, 2) == forest.ancestors(node)[3]
    assert forest.ancestors(node)[-1] == 0
    with pytest.raises(ValueError):
        forest.ancestor_at_generation(node, 6)


def test_locate_carries_barycentric_coordinates():
    from src.core import DyadicPoint

    forest, _ = _kuhn()
    center = DyadicPoint((1, 1), 1)
    found = forest.locate(center, 1)
    assert len(found) == 4
    for nid, lam in found:
        assert forest.node_generation[nid] == 1
        assert sum(lam.values()) == 1
        mid = forest.node_vertices[nid][0]
        assert lam[mid] == 1


def test_containing_roots_and_macro_dimension():
    from src.core import DyadicPoint

    forest, _ = _kuhn()
    assert len(forest.containing_roots(DyadicPoint((1, 3), 2))) == 1
    assert len(forest.containing_roots(DyadicPoint.from_ints((2, 2)))) == 0
    origin = forest.vertices.find(DyadicPoint.from_ints((0, 0)))
    assert forest.macro_dimension(origin) == 0
    mid = forest.node_vertices[forest.bisect(0)[0]][0]
    # the center lies on the shared diagonal
    assert forest.macro_dimension(mid) == 1
    dims = {v.id: forest.macro_dimension(v.id) for v in forest.vertices}
    assert dims == {**{v: 0 for v in range(4)}, mid: 1}


def test_root_boundary_facets_of_the_square():
    forest, _ = _kuhn()
    assert len(forest.root_boundary_facets()) == 4


def test_root_generation_must_be_zero():
    from src.core import DyadicPoint, SeedError, VertexTable
    from src.forest import Forest

    table = VertexTable(2)
    for coords, gen in (((0, 0), -2), ((1, 0), -3), ((1, 1), -1)):
        table.add(DyadicPoint.from_ints(coords), gen)
    with pytest.raises(SeedError):
        Forest(table, [(0, 1, 2)])


@pytest.mark.parametrize("d, count", [(2, 100), (3, 60)])
def test_node_volume_matches_exact_determinant(d, count):
    from src.core import simplex_volume
    from src.forest import random_refinement

    forest, tria = _kuhn(d)
    random_refinement(tria, count, seed=d)
    assert len(forest) > count
    for nid in range(len(forest)):
        assert simplex_volume(forest.points(nid)) == forest.node_volume(nid)
