"""Tests for exact simplex geometry."""

from fractions import Fraction

import pytest


def _pts(*coords):
    from src.core import DyadicPoint

    return [DyadicPoint.from_fractions(c) for c in coords]


def test_simplex_volume_unit_triangle_and_tetrahedron():
    from src.core import simplex_volume

    assert simplex_volume(_pts((0, 0), (1, 0), (0, 1))) == Fraction(1, 2)
    assert simplex_volume(_pts((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1))) == Fraction(1, 6)


def test_simplex_volume_of_dyadic_child():
    from src.core import simplex_volume

    half = Fraction(1, 2)
    assert simplex_volume(_pts((0, 0), (1, 0), (half, half))) == Fraction(1, 4)


def test_degenerate_simplex_is_rejected():
    from src.core import DegenerateSimplexError, simplex_volume

    with pytest.raises(DegenerateSimplexError):
        simplex_volume(_pts((0, 0), (1, 1), (2, 2)))
    with pytest.raises(ValueError):
        simplex_volume(_pts((0, 0), (1, 1)))


def test_barycentric_coordinates_sum_to_one():
    from src.core import barycentric_coordinates, in_closed_simplex

    tri = _pts((0, 0), (1, 0), (0, 1))
    q = _pts((Fraction(1, 4), Fraction(1, 4)))[0]
    lam = barycentric_coordinates(q, tri)
    assert lam == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    assert sum(lam) == 1
    assert in_closed_simplex(q, tri)
    assert in_closed_simplex(tri[1], tri)
    assert not in_closed_simplex(_pts((1, 1))[0], tri)


def test_normm_and_diameter():
    from src.core import normm, simplex_diameter

    assert normm((1, 1), 2) == 2
    assert normm((Fraction(1, 2), 0, 0), 3) == Fraction(2, 3)
    with pytest.raises(ValueError):
        normm((1, 1), 3)
    assert simplex_diameter(_pts((0, 0), (1, 0), (0, 1))) == pytest.approx(2**0.5)
