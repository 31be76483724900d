"""Tests for generation, level and type arithmetic."""


def test_level_and_type_of_positive_generations():
    from src.core import level_of, type_of

    assert [level_of(g, 2) for g in range(1, 7)] == [1, 1, 2, 2, 3, 3]
    assert [type_of(g, 2) for g in range(1, 7)] == [1, 2, 1, 2, 1, 2]
    assert [type_of(g, 3) for g in range(1, 7)] == [1, 2, 3, 1, 2, 3]


def test_level_and_type_of_seed_generations():
    """Seed vertices carry generations -color, roots generation 0."""
    from src.core import level_of, type_of

    assert level_of(0, 3) == 0
    assert type_of(0, 3) == 3
    assert level_of(-1, 3) == 0
    assert type_of(-1, 3) == 2
    assert level_of(-3, 3) == -1
    assert type_of(-3, 3) == 3


def test_generation_of_inverts_level_and_type():
    from src.core import generation_of, level_of, type_of

    for d in (2, 3, 4):
        for gen in range(-2 * d, 4 * d):
            assert generation_of(level_of(gen, d), type_of(gen, d), d) == gen


def test_type_stays_in_range():
    from src.core import type_of

    for d in (2, 3, 5):
        assert all(1 <= type_of(g, d) <= d for g in range(-10, 30))


def test_maubach_k_and_traxler_gamma():
    from src.core import maubach_k, traxler_gamma

    # gen 0 bisects [v0, vd], then k counts down
    assert [maubach_k(g, 3) for g in range(0, 4)] == [3, 2, 1, 3]
    assert [traxler_gamma(g, 3) for g in range(0, 4)] == [0, 1, 2, 0]
