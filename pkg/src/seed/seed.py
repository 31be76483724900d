"""Initial triangulations: Kuhn cubes, validation and coloring."""

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..bisection.simplex import maubach_order_from_colors
from ..core.dyadic import DyadicPoint
from ..core.exceptions import DegenerateSimplexError, SeedError
from ..core.geometry import barycentric_matrix, apply_barycentric, simplex_volume
from ..utils import get_logger

logger = get_logger(__name__)

MAX_KUHN_DIMENSION = 8


@dataclass
class SeedTriangulation:
    """
    Initial triangulation with optional (d+1)-coloring.

    For uncolored seeds the vertex order of each simplex is its Maubach order.
    """

    points: List[DyadicPoint]
    simplices: List[Tuple[int, ...]]
    colors: Optional[List[int]] = None
    name: str = field(default="seed", compare=False)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def is_colored(self) -> bool:
        return self.colors is not None


@dataclass(frozen=True)
class ColoringViolation:
    """A simplex that does not see all d+1 colors."""

    simplex: int
    vertex_ids: Tuple[int, ...]
    colors: Tuple[int, ...]
    missing: Tuple[int, ...]


def _kuhn_color(coords: Sequence[int], d: int) -> int:
    total = sum(coords)
    return d if total == 0 else total - 1


def kuhn_cube(d: int) -> SeedTriangulation:
    """
    Unit cube split into the d! Kuhn simplices ``[0, e_p1, e_p1 + e_p2, ...]``.

    Colors: the origin gets d, every other corner ``|v|_1 - 1``.

    Raises:
        ValueError: If d is outside 2..8
    """
    if not 2 <= d <= MAX_KUHN_DIMENSION:
        raise ValueError(f"Kuhn cube dimension must be in 2..{MAX_KUHN_DIMENSION}, got {d}")
    corners = list(product((0, 1), repeat=d))
    index = {c: i for i, c in enumerate(corners)}
    simplices = []
    for perm in permutations(range(d)):
        current = [0] * d
        ids = [index[tuple(current)]]
        for axis in perm:
            current[axis] = 1
            ids.append(index[tuple(current)])
        simplices.append(tuple(ids))
    points = [DyadicPoint.from_ints(c) for c in corners]
    colors = [_kuhn_color(c, d) for c in corners]
    logger.debug(f"Kuhn cube d={d}: {len(simplices)} simplices")
    return SeedTriangulation(points, simplices, colors, name=f"kuhn{d}")


def single_kuhn_simplex(d: int) -> SeedTriangulation:
    """The Kuhn simplex ``[0, e1, e1 + e2, ..., e1 + ... + ed]`` alone."""
    if d < 2:
        raise ValueError(f"Dimension must be at least 2, got {d}")
    points = []
    for j in range(d + 1):
        points.append(DyadicPoint.from_ints([1] * j + [0] * (d - j)))
    colors = [d] + list(range(d))
    return SeedTriangulation(points, [tuple(range(d + 1))], colors, name=f"kuhn-simplex{d}")


def square_seed(diagonal: str = "main") -> SeedTriangulation:
    """
    Uncolored unit square cut into two triangles along a diagonal.

    Each triangle lists the diagonal endpoints first and last, so the
    first bisection splits the diagonal.
    """
    p = [DyadicPoint.from_ints(c) for c in ((0, 0), (1, 0), (1, 1), (0, 1))]
    if diagonal == "main":
        simplices = [(0, 1, 2), (0, 3, 2)]
    elif diagonal == "anti":
        simplices = [(1, 0, 3), (1, 2, 3)]
    else:
        raise ValueError(f"diagonal must be 'main' or 'anti', got {diagonal!r}")
    return SeedTriangulation(p, simplices, None, name=f"square-{diagonal}")


def validate_seed(seed: SeedTriangulation) -> None:
    """
    Check that a seed is a usable conforming triangulation.

    Checks vertex counts, nondegeneracy, facet multiplicity, and that no
    seed vertex lies on a simplex it does not belong to.

    Raises:
        SeedError: On the first problem found
    """
    if not seed.points or not seed.simplices:
        raise SeedError("Seed has no vertices or no simplices")
    d = seed.dim
    if d < 2:
        raise SeedError(f"Seed dimension must be at least 2, got {d}")
    n = len(seed.points)
    if any(p.dim != d for p in seed.points):
        raise SeedError("Seed points have mixed dimensions")
    if seed.colors is not None and len(seed.colors) != n:
        raise SeedError(f"Seed has {n} vertices but {len(seed.colors)} colors")

    facets = {}
    for si, simplex in enumerate(seed.simplices):
        if len(simplex) != d + 1 or len(set(simplex)) != d + 1:
            raise SeedError(f"Simplex {si} needs {d + 1} distinct vertices, got {tuple(simplex)}")
        if any(not 0 <= v < n for v in simplex):
            raise SeedError(f"Simplex {si} references a vertex outside 0..{n - 1}")
        try:
            simplex_volume([seed.points[v] for v in simplex])
        except DegenerateSimplexError as e:
            raise SeedError(f"Simplex {si} is degenerate: {e}") from e
        for i in range(d + 1):
            key = frozenset(simplex[:i] + simplex[i + 1 :])
            facets[key] = facets.get(key, 0) + 1
            if facets[key] > 2:
                raise SeedError(f"Facet {sorted(key)} is shared by more than two simplices")

    # float prefilter, exact confirmation
    coords = np.array([p.to_floats() for p in seed.points])
    homogeneous = np.hstack([np.ones((n, 1)), coords])
    for si, simplex in enumerate(seed.simplices):
        members = set(simplex)
        lam = np.linalg.solve(homogeneous[list(simplex)].T, homogeneous.T)
        candidates = np.flatnonzero((lam >= -1e-9).all(axis=0))
        candidates = [int(v) for v in candidates if int(v) not in members]
        if not candidates:
            continue
        matrix = barycentric_matrix([seed.points[v] for v in simplex])
        for v in candidates:
            if all(c >= 0 for c in apply_barycentric(matrix, seed.points[v])):
                raise SeedError(f"Vertex {v} lies on simplex {si} without being one of its vertices")


def validate_coloring(seed: SeedTriangulation) -> Optional[ColoringViolation]:
    """
    Check that every simplex sees all colors 0..d exactly once.

    Returns:
        None if the coloring is proper, otherwise the first violating simplex
    """
    if seed.colors is None:
        raise SeedError("Seed carries no coloring")
    d = seed.dim
    expected = set(range(d + 1))
    for si, simplex in enumerate(seed.simplices):
        colors = tuple(seed.colors[v] for v in simplex)
        if sorted(colors) != sorted(expected):
            return ColoringViolation(
                simplex=si,
                vertex_ids=tuple(simplex),
                colors=colors,
                missing=tuple(sorted(expected - set(colors))),
            )
        maubach_order_from_colors(simplex, colors, d)
    return None


def assign_initial_generations(seed: SeedTriangulation) -> List[int]:
    """
    Vertex generations ``gen(v) = -color(v)`` of a colored seed.

    Raises:
        SeedError: If the seed is uncolored or the coloring is improper
    """
    violation = validate_coloring(seed)
    if violation is not None:
        raise SeedError(
            f"Simplex {violation.simplex} with colors {violation.colors} misses colors {violation.missing}"
        )
    return [-c for c in seed.colors]
