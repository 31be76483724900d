"""Exact simplex geometry over dyadic points."""

from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

import numpy as np

from .dyadic import DyadicPoint, common_numerators
from .exceptions import DegenerateSimplexError

BarycentricMatrix = Tuple[Tuple[Fraction, ...], ...]


def normm(x: Sequence, d: int) -> Fraction:
    """
    Diagnostic norm ``max|x_i| + (1/d) * sum|x_i|``.

    Args:
        x: Rational vector of length d
        d: Ambient dimension

    Returns:
        Exact value as a Fraction
    """
    values = [abs(Fraction(c)) for c in x]
    if len(values) != d:
        raise ValueError(f"Expected a vector of length {d}, got {len(values)}")
    if not values:
        return Fraction(0)
    return max(values) + Fraction(sum(values), d)


def _bareiss_determinant(matrix: List[List[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    a = [row[:] for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def simplex_volume(vertices: Sequence[DyadicPoint]) -> Fraction:
    """
    Exact d-dimensional volume ``|det(v_i - v_0)| / d!``.

    Args:
        vertices: d+1 points of dimension d

    Returns:
        Non-negative rational volume

    Raises:
        DegenerateSimplexError: If the simplex has zero volume
    """
    d = vertices[0].dim
    if len(vertices) != d + 1:
        raise ValueError(f"A {d}-simplex needs {d + 1} vertices, got {len(vertices)}")
    exponent, nums = common_numerators(vertices)
    base = nums[0]
    rows = [[p[i] - base[i] for i in range(d)] for p in nums[1:]]
    det = _bareiss_determinant(rows)
    if det == 0:
        raise DegenerateSimplexError(
            "Simplex with vertices " + ", ".join(str(v) for v in vertices) + " is degenerate"
        )
    return Fraction(abs(det), factorial(d) * (1 << (exponent * d)))


def barycentric_matrix(vertices: Sequence[DyadicPoint]) -> BarycentricMatrix:
    """
    Inverse of the homogeneous vertex matrix of a simplex.

    Multiplying it with ``(1, x_1, ..., x_d)`` gives the barycentric
    coordinates of ``x``.

    Raises:
        DegenerateSimplexError: If the simplex has zero volume
    """
    d = vertices[0].dim
    n = d + 1
    coords = [v.to_fractions() for v in vertices]
    # column j holds (1, v_j)
    a = [[Fraction(1)] * n] + [[coords[j][i] for j in range(n)] for i in range(d)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DegenerateSimplexError("Cannot invert a degenerate simplex")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def apply_barycentric(matrix: BarycentricMatrix, point: DyadicPoint) -> Tuple[Fraction, ...]:
    """Barycentric coordinates of ``point`` from a precomputed matrix."""
    x = (Fraction(1),) + point.to_fractions()
    return tuple(sum((r * c for r, c in zip(row, x)), Fraction(0)) for row in matrix)


def barycentric_coordinates(
    point: DyadicPoint, vertices: Sequence[DyadicPoint]
) -> Tuple[Fraction, ...]:
    """
    Exact barycentric coordinates of a point with respect to a simplex.

    Args:
        point: Query point
        vertices: d+1 simplex vertices

    Returns:
        d+1 rationals summing to one
    """
    return apply_barycentric(barycentric_matrix(vertices), point)


def in_closed_simplex(point: DyadicPoint, vertices: Sequence[DyadicPoint]) -> bool:
    """True if the point lies in the closed simplex."""
    return all(c >= 0 for c in barycentric_coordinates(point, vertices))


def simplex_diameter(vertices: Sequence[DyadicPoint]) -> float:
    """Euclidean diameter (rounded to float)."""
    pts = np.array([v.to_floats() for v in vertices])
    diffs = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=-1)).max())


def edge_vector(a: DyadicPoint, b: DyadicPoint) -> Tuple[Fraction, ...]:
    """Exact difference ``b - a``."""
    return tuple(y - x for x, y in zip(a.to_fractions(), b.to_fractions()))
