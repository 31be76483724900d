"""Regularized mesh size function and grading report."""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..core.arith import type_of
from ..core.exceptions import InvariantViolation
from ..core.geometry import simplex_diameter
from ..forest.closure import refine_to_size
from ..forest.triangulation import Triangulation
from ..utils import get_config, get_logger
from .adjacency import VERTEX, AdjacencyGraph, max_plus_propagate

logger = get_logger(__name__)


@dataclass
class GradingReport:
    """
    Mesh size function ``h(T) = h0 * 2^-s(T)`` on the leaves of a triangulation.

    ``h_exponent`` holds s(T); the grading check h(T) <= 2 h(T') is the
    integer check |s(T) - s(T')| <= 1 on intersecting leaves.
    """

    dimension: int
    leaf_ids: List[int]
    generations: List[int]
    levels: List[int]
    types: List[int]
    h_exponent: List[int]
    diameters: List[float]
    h0: float
    gamma_exponent: int
    gamma: float
    c1: float
    c2: float
    gamma_constant: Optional[int] = None
    jump_histogram: Dict[int, Dict[int, int]] = field(default_factory=dict)
    jump_violations: int = 0

    @property
    def ratio(self) -> float:
        """Equivalence ratio c2 / c1."""
        return self.c2 / self.c1

    def h_values(self) -> np.ndarray:
        return self.h0 * np.exp2(-np.asarray(self.h_exponent, dtype=float))

    def summary(self) -> Dict:
        return {
            "dimension": self.dimension,
            "leaves": len(self.leaf_ids),
            "h0": self.h0,
            "gamma": self.gamma,
            "gamma_exponent": self.gamma_exponent,
            "c1": self.c1,
            "c2": self.c2,
            "ratio": self.ratio,
            "gamma_constant": self.gamma_constant,
            "max_level": max(self.levels) if self.levels else None,
            "jump_violations": self.jump_violations,
        }

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["jump_histogram"] = {
            str(n): {str(j): c for j, c in sorted(hist.items())} for n, hist in sorted(self.jump_histogram.items())
        }
        data["summary"] = self.summary()
        return data

    def rows(self) -> List[Dict]:
        """Per-leaf rows: id, gen, level, type, diam, h-exponent."""
        return [
            {"id": i, "gen": g, "level": lv, "type": t, "diam": dm, "h_exponent": s}
            for i, g, lv, t, dm, s in zip(
                self.leaf_ids, self.generations, self.levels, self.types, self.diameters, self.h_exponent
            )
        ]


def mesh_size_exponents(tria: Triangulation, graph: Optional[AdjacencyGraph] = None) -> np.ndarray:
    """s(T) = max over leaves T' of level(T') - dist(T, T'), rows in leaf id order."""
    if graph is None:
        graph = AdjacencyGraph(tria, VERTEX)
    s, _ = max_plus_propagate(graph.matrix, tria.levels(), step=1)
    return s


def brute_force_mesh_size(tria: Triangulation, graph: Optional[AdjacencyGraph] = None) -> np.ndarray:
    """All-pairs reference for ``mesh_size_exponents`` (quadratic memory)."""
    if graph is None:
        graph = AdjacencyGraph(tria, VERTEX)
    dist = graph.all_pairs()
    levels = tria.levels().astype(float)
    return (levels[None, :] - dist).max(axis=1).astype(np.int64)


def regularized_mesh_size(
    tria: Triangulation,
    gamma_constant: Optional[int] = None,
    with_jumps: bool = True,
    constants=None,
) -> GradingReport:
    """
    Build the grading report of a conforming triangulation.

    Args:
        tria: Conforming triangulation
        gamma_constant: Level-estimate constant to record in the report
        with_jumps: Also collect level-jump histograms by macro dimension
        constants: Optional SeedConstants used for the jump bounds at seed vertices

    Returns:
        GradingReport

    Raises:
        InvariantViolation: If intersecting leaves differ by more than one in s
    """
    forest = tria.forest
    d = tria.d
    graph = AdjacencyGraph(tria, VERTEX)
    s = mesh_size_exponents(tria, graph)

    rows, cols = graph.pairs()
    gamma_exponent = int(np.abs(s[rows] - s[cols]).max()) if rows.size else 0
    if gamma_exponent > 1:
        i = int(np.argmax(np.abs(s[rows] - s[cols])))
        raise InvariantViolation(
            "mesh-size-grading",
            f"Leaves {int(tria.leaf_ids[rows[i]])} and {int(tria.leaf_ids[cols[i]])} have mesh size "
            f"exponents {int(s[rows[i]])} and {int(s[cols[i]])}",
            witness=(int(tria.leaf_ids[rows[i]]), int(tria.leaf_ids[cols[i]])),
        )

    h0 = float(np.mean([simplex_diameter(forest.points(r)) for r in forest.roots]))
    diameters = np.array([simplex_diameter(forest.points(int(t))) for t in tria.leaf_ids])
    h = h0 * np.exp2(-s.astype(float))
    quotient = h / diameters
    gens = tria.generations()
    levels = tria.levels()

    report = GradingReport(
        dimension=d,
        leaf_ids=[int(t) for t in tria.leaf_ids],
        generations=[int(g) for g in gens],
        levels=[int(lv) for lv in levels],
        types=[type_of(int(g), d) for g in gens],
        h_exponent=[int(x) for x in s],
        diameters=[float(x) for x in diameters],
        h0=h0,
        gamma_exponent=gamma_exponent,
        gamma=float(2**gamma_exponent),
        c1=float(quotient.min()),
        c2=float(quotient.max()),
        gamma_constant=gamma_constant,
    )
    if with_jumps:
        from .macro import level_jump_stats

        jumps = level_jump_stats(tria, constants=constants)
        report.jump_histogram = jumps.histogram
        report.jump_violations = len(jumps.violations)

    logger.info(
        f"Grading report: {len(report.leaf_ids)} leaves, gamma={report.gamma:g}, "
        f"c1={report.c1:.4g}, c2={report.c2:.4g}"
    )
    return report


@dataclass
class DepthSweepEntry:
    leaves: int
    c1: float
    c2: float
    ratio: float
    gamma: float


@dataclass
class DepthSweep:
    entries: List[DepthSweepEntry]
    tolerance: float

    @property
    def stabilized(self) -> bool:
        """True if the last two c2/c1 ratios agree within the tolerance."""
        if len(self.entries) < 2:
            return False
        a, b = self.entries[-2].ratio, self.entries[-1].ratio
        return abs(a - b) <= self.tolerance * max(a, b)


def depth_sweep(
    tria: Triangulation,
    targets: Sequence[int],
    seed: int = 0,
    tolerance: Optional[float] = None,
) -> DepthSweep:
    """
    Grow a mesh by random closure refinement through increasing leaf targets.

    Args:
        tria: Starting conforming triangulation
        targets: Increasing leaf counts at which a report is taken
        seed: PCG64 seed
        tolerance: Relative tolerance for the stabilization flag

    Returns:
        DepthSweep with one entry per target
    """
    if tolerance is None:
        tolerance = get_config().get("analysis", "sweep_tolerance", default=0.1)
    rng = np.random.Generator(np.random.PCG64(seed))
    entries = []
    current = tria
    for target in targets:
        current = refine_to_size(current, target, rng)
        report = regularized_mesh_size(current, with_jumps=False)
        entries.append(DepthSweepEntry(len(current), report.c1, report.c2, report.ratio, report.gamma))
        logger.info(f"Depth sweep: {len(current)} leaves, c2/c1 = {report.ratio:.4g}")
    return DepthSweep(entries, float(tolerance))
