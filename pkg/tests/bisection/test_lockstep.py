"""Tests for the lockstep comparison of the three bisection orderings."""

from fractions import Fraction
from math import factorial

import numpy as np
import pytest


def _run(d, steps, seed=0, **kwargs):
    from src.bisection import LockstepRun
    from src.seed import kuhn_cube

    run = LockstepRun.from_seed(kuhn_cube(d), **kwargs)
    run.run(steps, np.random.Generator(np.random.PCG64(seed)))
    return run


def _edge_vector(table, a, b):
    pa = table.point(a).to_fractions()
    pb = table.point(b).to_fractions()
    return tuple(y - x for x, y in zip(pa, pb))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_orderings_agree_with_subsimplex_rule(d):
    run = _run(d, 150, keep_simplices=True)
    assert run.stats.bisections == 150
    assert run.stats.subsimplices_checked >= 150
    assert len(run) == factorial(d) + 150
    assert len(run.stats.simplices) == 150


def test_orderings_agree_in_six_dimensions():
    run = _run(6, 1500, seed=6, check_subsimplices=False)
    assert run.stats.bisections == 1500
    assert run.stats.subsimplices_checked == 0
    assert len(run) == factorial(6) + 1500


def test_root_generation_must_be_zero():
    from src.bisection import LockstepRun
    from src.core import DyadicPoint, InvariantViolation, VertexTable

    table = VertexTable(2)
    for coords, gen in (((0, 0), -2), ((1, 0), -3), ((1, 1), -1)):
        table.add(DyadicPoint.from_ints(coords), gen)
    with pytest.raises(InvariantViolation):
        LockstepRun(table, [(0, 1, 2)])


@pytest.mark.parametrize("d", [2, 3])
def test_maubach_sorting_structure_holds(d):
    from src.bisection import maubach_structure_case

    run = _run(d, 120, seed=7)
    for simplex in run.maubach:
        gens = [run.vertices.generation(v) for v in simplex.vertex_ids]
        assert maubach_structure_case(gens, simplex.generation, d) is not None


# ── Kuhn norm identities ─────────────────────────────────────────────────────


@pytest.mark.parametrize("d", [2, 3])
def test_edge_norms_follow_sharp_level_and_type(d):
    from src.bisection import levelsharp, typesharp

    run = _run(d, 80, seed=3, keep_simplices=True)
    for simplex in run.stats.simplices + run.sorted:
        for edge in simplex.edges():
            x = _edge_vector(run.vertices, *edge.vertex_ids)
            scale = Fraction(2) ** (1 - levelsharp(edge, d))
            assert max(abs(c) for c in x) == scale
            assert sum(abs(c) for c in x) == scale * (d + 1 - typesharp(edge, d))


@pytest.mark.parametrize("d", [2, 3])
def test_bisection_edge_is_sharp_oldest_and_normm_longest(d):
    from src.bisection import bisection_edge_positions, gensharp
    from src.core import normm

    run = _run(d, 80, seed=11, keep_simplices=True)
    for simplex in run.stats.simplices:
        i, j = bisection_edge_positions(simplex.vertex_generations, d)
        bse = simplex.subsimplex((i, j))
        others = [e for e in simplex.edges() if e.vertex_set != bse.vertex_set]
        assert all(gensharp(bse, d) < gensharp(e, d) for e in others)
        longest = normm(_edge_vector(run.vertices, *bse.vertex_ids), d)
        assert all(normm(_edge_vector(run.vertices, *e.vertex_ids), d) <= longest for e in others)
