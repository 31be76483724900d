"""Macro-vertex classification and per-vertex level and sharp-generation jumps."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..bisection.rules import gensharp
from ..core.arith import level_of
from ..forest.forest import Forest
from ..forest.triangulation import Triangulation
from ..utils import get_logger
from .constants import SeedConstants, c_of_seed

logger = get_logger(__name__)


def macro_dimension(forest: Forest, vertex: int) -> int:
    """Smallest n such that the vertex lies in a closed n-subsimplex of a root."""
    return forest.macro_dimension(vertex)


@dataclass
class MacroClassification:
    dimension: int
    macro: Dict[int, int]

    def is_critical(self, vertex: int) -> bool:
        return self.macro[vertex] <= self.dimension - 2

    @property
    def critical(self) -> List[int]:
        return sorted(v for v in self.macro if self.is_critical(v))

    def counts(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.macro.values()).items()))


def classify_vertices(tria: Triangulation) -> MacroClassification:
    forest = tria.forest
    return MacroClassification(forest.d, {v: forest.macro_dimension(v) for v in tria.vertex_ids()})


@dataclass
class JumpStats:
    """
    Per-vertex maximal jump of an edge quantity, bucketed by macro dimension.

    ``histogram[n][j]`` counts the n-macro vertices whose jump is j.
    ``violations`` lists (vertex, n, jump, bound) where the bound fails.
    """

    quantity: str
    jumps: Dict[int, int]
    macro: MacroClassification
    bounds: Dict[int, int]
    histogram: Dict[int, Dict[int, int]] = field(default_factory=dict)
    violations: List[Tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def max_by_dimension(self) -> Dict[int, int]:
        return {n: max(hist) for n, hist in self.histogram.items() if hist}

    def to_dict(self) -> Dict:
        return {
            "quantity": self.quantity,
            "bounds": {str(n): b for n, b in sorted(self.bounds.items())},
            "histogram": {
                str(n): {str(j): c for j, c in sorted(hist.items())} for n, hist in sorted(self.histogram.items())
            },
            "violations": [list(v) for v in self.violations],
        }


def _edge_arrays(tria: Triangulation) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.array(list(tria.edges()), dtype=np.int64).reshape(-1, 2)
    return edges[:, 0], edges[:, 1]


def _vertex_ranges(a: np.ndarray, b: np.ndarray, values: np.ndarray, n_vertices: int) -> np.ndarray:
    hi = np.full(n_vertices, np.iinfo(np.int64).min, dtype=np.int64)
    lo = np.full(n_vertices, np.iinfo(np.int64).max, dtype=np.int64)
    for ends in (a, b):
        np.maximum.at(hi, ends, values)
        np.minimum.at(lo, ends, values)
    used = hi >= lo
    spread = np.zeros(n_vertices, dtype=np.int64)
    spread[used] = hi[used] - lo[used]
    return spread


def _bucket(
    quantity: str,
    spread: np.ndarray,
    classification: MacroClassification,
    bounds: Dict[int, int],
) -> JumpStats:
    stats = JumpStats(quantity, {}, classification, bounds)
    histogram: Dict[int, Counter] = {n: Counter() for n in range(classification.dimension + 1)}
    for v, n in classification.macro.items():
        j = int(spread[v])
        stats.jumps[v] = j
        histogram[n][j] += 1
        if j > bounds[n]:
            stats.violations.append((v, n, j, bounds[n]))
    stats.histogram = {n: dict(sorted(h.items())) for n, h in histogram.items()}
    if stats.violations:
        logger.warning(f"{quantity}: {len(stats.violations)} vertices exceed their bound")
    return stats


def level_jump_stats(tria: Triangulation, constants: Optional[SeedConstants] = None) -> JumpStats:
    """
    Maximal |level(e) - level(e')| over edges e, e' of the mesh meeting at v.

    The edge level is the level of its younger endpoint. Bounds are
    2 + J_n by macro dimension n.
    """
    forest = tria.forest
    if constants is None:
        constants = c_of_seed(forest)
    a, b = _edge_arrays(tria)
    gens = np.asarray(forest.vertices.generations, dtype=np.int64)
    d = forest.d
    edge_level = -((-np.maximum(gens[a], gens[b])) // d)
    spread = _vertex_ranges(a, b, edge_level, len(forest.vertices))
    bounds = {n: constants.jump_bound(n) for n in range(d + 1)}
    return _bucket("level-jump", spread, classify_vertices(tria), bounds)


def gensharp_gap_stats(tria: Triangulation, constants: Optional[SeedConstants] = None) -> JumpStats:
    """
    Maximal gensharp(e) - gensharp(e') over edges of the mesh meeting at v.

    Bounds: 2d for n in {d-1, d}, 4d for 1 <= n <= d-2, (C+1)(d-1) for n = 0.
    """
    forest = tria.forest
    if constants is None:
        constants = c_of_seed(forest)
    d = forest.d
    a, b = _edge_arrays(tria)
    gen = forest.vertices.generation
    sharp = np.fromiter(
        (gensharp(sorted((gen(int(x)), gen(int(y))), reverse=True), d) for x, y in zip(a, b)),
        dtype=np.int64,
        count=a.size,
    )
    spread = _vertex_ranges(a, b, sharp, len(forest.vertices))
    bounds = {n: constants.gensharp_bound(n) for n in range(d + 1)}
    return _bucket("gensharp-gap", spread, classify_vertices(tria), bounds)


def edge_level(forest: Forest, a: int, b: int) -> int:
    """Level of an edge: the level of its younger endpoint."""
    return level_of(max(forest.vertices.generation(a), forest.vertices.generation(b)), forest.d)
