"""Seed constants: C(T0), C'(T0), the jump table J_n and Gamma."""

import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List

import numpy as np

from ..forest.closure import uniform_refine
from ..forest.forest import Forest
from ..forest.triangulation import Triangulation
from ..utils import get_logger
from .adjacency import EDGE, AdjacencyGraph

logger = get_logger(__name__)


@dataclass(frozen=True)
class SeedConstants:
    """Constants of a colored seed entering the level estimates."""

    dimension: int
    C: int
    C_prime: int
    J: Dict[int, int]
    Gamma: int
    Gamma_plus: int

    def jump_bound(self, n: int) -> int:
        """Upper bound 2 + J_n on the edge level jump at an n-macro vertex."""
        return 2 + self.J[n]

    def gensharp_bound(self, n: int) -> int:
        """Upper bound on the sharp-generation gap of two edges at an n-macro vertex."""
        d = self.dimension
        if n >= d - 1:
            return 2 * d
        if n >= 1:
            return 4 * d
        return (self.C + 1) * (d - 1)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["J"] = {str(n): j for n, j in sorted(self.J.items())}
        return data


def jump_table(C: int, d: int) -> Dict[int, int]:
    """J_n for n = 0..d; J_0 is clamped at zero."""
    table = {}
    for n in range(d + 1):
        if n >= d - 1:
            table[n] = 0
        elif n >= 1:
            table[n] = 2
        else:
            table[n] = max(0, math.ceil((C + 1) * (d - 1) / d) - 2)
    return table


def gamma_from_table(J: Dict[int, int], d: int) -> int:
    """Gamma = 1 + sum of J_n over n = 0..d-2."""
    return 1 + sum(J[n] for n in range(d - 1))


def patch_chain_diameter(tria: Triangulation, vertices: Iterable[int]) -> int:
    """
    Largest 1-neighbor distance between two simplices of one vertex patch.

    Chains are restricted to the patch itself. Disconnected patches (a
    vertex where the domain pinches) do not count.
    """
    star = tria.vertex_star()
    best = 0
    for v in vertices:
        patch = star.get(v, [])
        if len(patch) < 2:
            continue
        dist = AdjacencyGraph(tria, EDGE, leaves=patch).all_pairs()
        finite = dist[np.isfinite(dist)]
        if finite.size:
            best = max(best, int(finite.max()))
    return best


def seed_vertices(forest: Forest) -> List[int]:
    return sorted({v for r in forest.roots for v in forest.node_vertices[r]})


def c_of_seed(forest: Forest) -> SeedConstants:
    """
    Compute C(T0), C'(T0), J_n, Gamma and Gamma+ of a forest's seed.

    C(T0) is taken over the vertex patches of the full uniform refinement
    T0+ (generation d), C'(T0) over the patches of T0 itself. Building T0+
    bisects the roots in the shared forest; existing triangulations are
    not affected.
    """
    d = forest.d
    roots = Triangulation(forest, forest.roots)
    refined = uniform_refine(roots, d)
    corners = seed_vertices(forest)

    C = patch_chain_diameter(refined, corners)
    C_prime = patch_chain_diameter(roots, corners)
    J = jump_table(C, d)
    gamma = gamma_from_table(J, d)
    constants = SeedConstants(
        dimension=d,
        C=C,
        C_prime=C_prime,
        J=J,
        Gamma=gamma,
        Gamma_plus=gamma + 1,
    )
    logger.info(f"Seed constants: C={C}, C'={C_prime}, Gamma={gamma}, Gamma+={gamma + 1}")
    return constants
