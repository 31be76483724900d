"""Generation, level and type arithmetic.

A simplex (or vertex, edge, subsimplex) carries an integer generation.
With ambient dimension ``d`` the level is ``ceil(gen / d)`` and the type is
the position inside the current level cycle, so that::

    gen = d * (level - 1) + type,    1 <= type <= d
"""


def level_of(gen: int, d: int) -> int:
    """
    Level of a generation.

    Args:
        gen: Signed generation
        d: Ambient dimension (d >= 2)

    Returns:
        ceil(gen / d), correct for negative generations
    """
    return -((-gen) // d)


def type_of(gen: int, d: int) -> int:
    """
    Type of a generation, always in 1..d.

    Args:
        gen: Signed generation
        d: Ambient dimension (d >= 2)

    Returns:
        gen - d * (level - 1)
    """
    return gen - d * (level_of(gen, d) - 1)


def generation_of(level: int, type_: int, d: int) -> int:
    """Inverse of (level_of, type_of)."""
    return d * (level - 1) + type_


def maubach_k(gen: int, d: int) -> int:
    """Index k of the Maubach bisection edge [v0, vk], in 1..d."""
    return d - (gen % d)


def traxler_gamma(gen: int, d: int) -> int:
    """Traxler tag gamma = gen mod d, in 0..d-1."""
    return gen % d
