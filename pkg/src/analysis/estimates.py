"""Empirical checks of the level estimates between leaves and along edge chains."""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..forest.triangulation import Triangulation
from ..utils import get_config, get_logger
from .adjacency import VERTEX, AdjacencyGraph, incidence_matrix, max_plus_propagate

logger = get_logger(__name__)

LEVEL = "level"
GENERATION = "generation"


@dataclass
class EstimateResult:
    """
    Outcome of one estimate check.

    ``counterexample`` is (far, near, difference, distance): the pair for
    which difference > distance + slack, with ``near`` the simplex (or
    edge key) the estimate is anchored at.
    """

    name: str
    constant: int
    ok: bool
    checked: int
    worst_slack: int
    counterexample: Optional[Tuple] = None

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "constant": self.constant,
            "ok": self.ok,
            "checked": self.checked,
            "worst_slack": self.worst_slack,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def verify_level_estimate(
    tria: Triangulation,
    gamma: int,
    form: str = LEVEL,
    sampled: bool = False,
    sample_sources: Optional[int] = None,
    seed: int = 0,
) -> EstimateResult:
    """
    Check level(T') - level(T) <= dist(T', T) + gamma for all leaf pairs.

    With ``form="generation"`` the check is
    gen(T') - gen(T) <= (dist + gamma + 1) d - 1 instead.

    The exact check is one max-plus pass over the adjacency graph. With
    ``sampled=True`` a BFS from a few random leaves checks the same
    inequality pair by pair, which is how large meshes are spot-checked.

    Args:
        tria: Conforming triangulation
        gamma: Constant Gamma (or Gamma+)
        form: "level" or "generation"
        sampled: Use BFS from sampled sources instead of the exact pass
        sample_sources: Number of BFS sources (default from config)
        seed: PCG64 seed for the sources

    Returns:
        EstimateResult with the first violating pair, if any
    """
    if form not in (LEVEL, GENERATION):
        raise ValueError(f"form must be '{LEVEL}' or '{GENERATION}', got {form!r}")
    d = tria.d
    graph = AdjacencyGraph(tria, VERTEX)
    if form == LEVEL:
        values, step, slack = tria.levels(), 1, gamma
    else:
        values, step, slack = tria.generations(), d, (gamma + 1) * d - 1
    name = f"{form}-estimate"

    if sampled:
        return _sampled_check(graph, values, step, slack, gamma, name, sample_sources, seed)

    pot, origin = max_plus_propagate(graph.matrix, values, step=step)
    excess = pot - values
    worst = int(excess.max()) if excess.size else 0
    result = EstimateResult(name, gamma, worst <= slack, len(values), worst)
    if not result.ok:
        i = int(np.argmax(excess))
        j = int(origin[i])
        distance = (int(values[j]) - int(pot[i])) // step
        result.counterexample = (
            int(graph.leaf_ids[j]),
            int(graph.leaf_ids[i]),
            int(values[j] - values[i]),
            distance,
        )
        logger.warning(f"{name} fails for Gamma={gamma}: {result.counterexample}")
    return result


def _sampled_check(graph, values, step, slack, gamma, name, sample_sources, seed) -> EstimateResult:
    if sample_sources is None:
        sample_sources = get_config().get("analysis", "sample_sources", default=32)
    rng = np.random.Generator(np.random.PCG64(seed))
    n = len(graph)
    count = min(int(sample_sources), n)
    rows = np.sort(rng.choice(n, size=count, replace=False))
    dist = graph.distances_from(rows)
    worst = None
    checked = 0
    for k, i in enumerate(rows):
        reachable = np.isfinite(dist[k])
        lhs = values[reachable] - values[i] - step * dist[k][reachable].astype(np.int64)
        checked += int(reachable.sum())
        m = int(np.argmax(lhs))
        if worst is None or lhs[m] > worst[0]:
            far = int(np.flatnonzero(reachable)[m])
            worst = (int(lhs[m]), far, int(i), int(dist[k][far]))
    slack_seen = worst[0] if worst else 0
    result = EstimateResult(name, gamma, slack_seen <= slack, checked, slack_seen)
    if not result.ok:
        _, far, near, distance = worst
        result.counterexample = (
            int(graph.leaf_ids[far]),
            int(graph.leaf_ids[near]),
            int(values[far] - values[near]),
            distance,
        )
        logger.warning(f"{name} (sampled) fails for Gamma={gamma}: {result.counterexample}")
    return result


def edge_line_graph(edge_keys) -> sp.csr_matrix:
    """Adjacency of edges that share a vertex."""
    incidence = incidence_matrix(edge_keys)
    shared = (incidence @ incidence.T).tocsr()
    shared.setdiag(0)
    shared.eliminate_zeros()
    shared.data = np.ones_like(shared.data, dtype=np.int8)
    return shared


def edge_chain_estimate(tria: Triangulation, gamma: int) -> EstimateResult:
    """
    Check level(e_N) - level(e_0) <= N + gamma along edge chains.

    An edge chain e_0, ..., e_N has consecutive edges sharing a vertex.
    The shortest chain between two edges is a shortest path in the line
    graph, so one max-plus pass covers all pairs.
    """
    forest = tria.forest
    d = tria.d
    keys = sorted(tria.edges())
    if not keys:
        return EstimateResult("edge-chain-estimate", gamma, True, 0, 0)
    gens = np.asarray(forest.vertices.generations, dtype=np.int64)
    ends = np.asarray(keys, dtype=np.int64)
    levels = -((-np.maximum(gens[ends[:, 0]], gens[ends[:, 1]])) // d)
    matrix = edge_line_graph(keys)

    pot, origin = max_plus_propagate(matrix, levels, step=1)
    excess = pot - levels
    worst = int(excess.max())
    result = EstimateResult("edge-chain-estimate", gamma, worst <= gamma, len(keys), worst)
    if not result.ok:
        i = int(np.argmax(excess))
        j = int(origin[i])
        result.counterexample = (keys[j], keys[i], int(levels[j] - levels[i]), int(levels[j] - pot[i]))
        logger.warning(f"edge-chain-estimate fails for Gamma={gamma}: {result.counterexample}")
    return result
