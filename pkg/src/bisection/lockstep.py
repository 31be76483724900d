"""Run the three bisection procedures side by side and compare them."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from ..core.exceptions import InvariantViolation
from ..core.vertices import VertexTable
from ..utils import get_logger
from .rules import (
    bisect_generation,
    bisect_maubach,
    bisect_traxler,
    subsimplex_bisection,
)
from .simplex import MaubachSimplex, SortedSimplex, TraxlerSimplex

logger = get_logger(__name__)


@dataclass
class LockstepStats:
    """Counters collected by a lockstep run."""

    bisections: int = 0
    subsimplices_checked: int = 0
    simplices: List[SortedSimplex] = field(default_factory=list)


class LockstepRun:
    """
    Keeps every simplex in Maubach, Traxler and generation-sorted form.

    Each step bisects one randomly chosen leaf in all three forms and checks
    that the children, the bisection edge and the bisection vertex agree.
    For every subsimplex containing the bisection edge the subsimplex rule
    must return the same edge and the generation of the new vertex.
    Simplices are bisected independently, without closure.
    """

    def __init__(
        self,
        vertices: VertexTable,
        maubach_roots: Sequence[Sequence[int]],
        check_subsimplices: bool = True,
        keep_simplices: bool = False,
    ):
        """
        Initialize a lockstep run.

        Args:
            vertices: Vertex table holding the seed vertices with generations
            maubach_roots: Root vertex ids in Maubach order (color order d, 0, ..., d-1)
            check_subsimplices: Also verify the subsimplex rule at every step
            keep_simplices: Record every bisected sorted simplex in the stats
        """
        self.vertices = vertices
        self.d = vertices.dim
        self.check_subsimplices = check_subsimplices
        self.keep_simplices = keep_simplices
        self.maubach: List[MaubachSimplex] = [MaubachSimplex(tuple(r), 0) for r in maubach_roots]
        self.traxler: List[TraxlerSimplex] = [TraxlerSimplex(tuple(r), 0) for r in maubach_roots]
        self.sorted: List[SortedSimplex] = [
            SortedSimplex.from_vertices(r, vertices.generation) for r in maubach_roots
        ]
        self.stats = LockstepStats()
        for s in self.sorted:
            if s.generation != 0:
                raise InvariantViolation(
                    "root-generation",
                    f"Root {s.vertex_ids} has generation {s.generation}, expected 0",
                    witness=s.vertex_ids,
                )
        logger.info(f"LockstepRun initialized with {len(self.sorted)} roots in dimension {self.d}")

    @classmethod
    def from_seed(cls, seed, **kwargs) -> "LockstepRun":
        """Start from a colored seed triangulation."""
        from ..seed import assign_initial_generations
        from .simplex import maubach_order_from_colors

        gens = assign_initial_generations(seed)
        table = VertexTable(seed.dim)
        for point, gen in zip(seed.points, gens):
            table.add(point, gen)
        roots = [
            maubach_order_from_colors(s, [seed.colors[v] for v in s], seed.dim)
            for s in seed.simplices
        ]
        return cls(table, roots, **kwargs)

    def __len__(self) -> int:
        return len(self.sorted)

    def step(self, index: int) -> None:
        """Bisect the simplex at ``index`` in all three forms."""
        m = bisect_maubach(self.maubach[index], self.vertices)
        t = bisect_traxler(self.traxler[index], self.vertices)
        g = bisect_generation(self.sorted[index], self.vertices)
        parent = self.sorted[index]

        if not (m.bse.key == t.bse.key == g.bse.key):
            raise InvariantViolation(
                "algorithm-equivalence",
                f"Bisection edges differ on {parent.vertex_ids}: "
                f"maubach {m.bse.key}, traxler {t.bse.key}, generation {g.bse.key}",
                witness=parent.vertex_ids,
            )
        if not (m.vertex == t.vertex == g.vertex):
            raise InvariantViolation(
                "algorithm-equivalence",
                f"Bisection vertices differ on {parent.vertex_ids}",
                witness=parent.vertex_ids,
            )
        children_m = {m.child1.vertex_set, m.child2.vertex_set}
        children_t = {t.child1.vertex_set, t.child2.vertex_set}
        children_g = {g.child1.vertex_set, g.child2.vertex_set}
        if not (children_m == children_t == children_g):
            raise InvariantViolation(
                "algorithm-equivalence",
                f"Children differ on {parent.vertex_ids}",
                witness=parent.vertex_ids,
            )

        if self.check_subsimplices:
            self._check_subsimplices(parent, g.bse.key, parent.generation + 1)
        if self.keep_simplices:
            self.stats.simplices.append(parent)

        # the three lists stay index-aligned by vertex set
        def pick(first, second, target):
            return (first, second) if first.vertex_set == target else (second, first)

        m1, m2 = pick(m.child1, m.child2, g.child1.vertex_set)
        t1, t2 = pick(t.child1, t.child2, g.child1.vertex_set)
        self.maubach[index] = m1
        self.traxler[index] = t1
        self.sorted[index] = g.child1
        self.maubach.append(m2)
        self.traxler.append(t2)
        self.sorted.append(g.child2)
        self.stats.bisections += 1

    def _check_subsimplices(self, parent: SortedSimplex, bse_key, vertex_gen: int) -> None:
        ids = parent.vertex_ids
        a, b = (ids.index(v) for v in bse_key)
        others = [i for i in range(len(ids)) if i not in (a, b)]
        for r in range(len(others) + 1):
            for extra in combinations(others, r):
                sub = parent.subsimplex((a, b) + extra)
                edge, gen = subsimplex_bisection(sub, self.d)
                if edge.key != bse_key or gen != vertex_gen:
                    raise InvariantViolation(
                        "subsimplex-consistency",
                        f"Subsimplex {sub.vertex_ids} of {ids} gives edge {edge.key} "
                        f"generation {gen}, expected {bse_key} generation {vertex_gen}",
                        witness=sub.vertex_ids,
                    )
                self.stats.subsimplices_checked += 1

    def run(self, steps: int, rng: Optional[np.random.Generator] = None) -> LockstepStats:
        """
        Perform random bisections.

        Args:
            steps: Number of bisections
            rng: Random generator (PCG64 seeded with 0 if None)

        Returns:
            Collected statistics
        """
        if rng is None:
            rng = np.random.Generator(np.random.PCG64(0))
        for _ in range(steps):
            self.step(int(rng.integers(len(self.sorted))))
        logger.info(
            f"Lockstep: {self.stats.bisections} bisections, "
            f"{self.stats.subsimplices_checked} subsimplices checked"
        )
        return self.stats
