"""Turn an uncolored seed into a colored one by d uniform refinements."""

from itertools import combinations
from typing import Dict, List

from ..bisection.rules import bisect_maubach
from ..bisection.simplex import MaubachSimplex, maubach_order_from_colors
from ..core.exceptions import InvariantViolation, SeedError
from ..core.vertices import VertexTable
from ..utils import get_logger
from .seed import SeedTriangulation, validate_seed

logger = get_logger(__name__)

MATCHING_NEIGHBOR_MESSAGE = "seed fails matching neighbor condition"


def _has_hanging_vertex(simplices: List[MaubachSimplex], table: VertexTable) -> bool:
    used = {v for s in simplices for v in s.vertex_ids}
    for s in simplices:
        for a, b in combinations(s.vertex_ids, 2):
            mid = table.find_midpoint(a, b)
            if mid is not None and mid in used:
                return True
    return False


def onboard_matching_neighbor(seed: SeedTriangulation) -> SeedTriangulation:
    """
    Refine a seed uniformly d times and color the result.

    The seed vertices get generation -d; the vertices created in step j get
    -d + j. If every uniform step stays conforming, the refined mesh is
    colored by ``color = -generation``. The Maubach order of each simplex
    is its listed vertex order, or the color order if the seed is colored.

    Args:
        seed: Seed triangulation, colored or not

    Returns:
        Colored seed with d! 2^d simplices per original Kuhn cube

    Raises:
        SeedError: If some uniform step would need a closure
    """
    validate_seed(seed)
    d = seed.dim
    table = VertexTable(d)
    for p in seed.points:
        table.add(p, -d)

    if seed.colors is not None:
        orders = [maubach_order_from_colors(s, [seed.colors[v] for v in s], d) for s in seed.simplices]
    else:
        orders = [tuple(s) for s in seed.simplices]
    mesh = [MaubachSimplex(tuple(o), 0) for o in orders]

    for step in range(1, d + 1):
        refined: List[MaubachSimplex] = []
        try:
            for s in mesh:
                result = bisect_maubach(s, table, vertex_generation=-d + step)
                refined.extend((result.child1, result.child2))
        except InvariantViolation as e:
            raise SeedError(f"{MATCHING_NEIGHBOR_MESSAGE}: {e}") from e
        mesh = refined
        if _has_hanging_vertex(mesh, table):
            raise SeedError(f"{MATCHING_NEIGHBOR_MESSAGE} (hanging vertex after uniform step {step})")
        logger.debug(f"Onboarding step {step}: {len(mesh)} simplices")

    used = sorted({v for s in mesh for v in s.vertex_ids})
    remap: Dict[int, int] = {v: i for i, v in enumerate(used)}
    points = [table.point(v) for v in used]
    colors = [-table.generation(v) for v in used]
    simplices = [tuple(remap[v] for v in s.vertex_ids) for s in mesh]

    expected = list(range(d + 1))
    for si, s in enumerate(simplices):
        if sorted(colors[v] for v in s) != expected:
            raise SeedError(
                f"{MATCHING_NEIGHBOR_MESSAGE}: simplex {si} has vertex generations "
                f"{sorted(-colors[v] for v in s)}"
            )

    logger.info(f"Onboarded seed: {len(seed.simplices)} -> {len(simplices)} colored simplices")
    return SeedTriangulation(points, simplices, colors, name=f"{seed.name}+")
