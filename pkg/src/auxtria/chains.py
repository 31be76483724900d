"""
Chains through the layers of an auxiliary triangulation and the
neighborhood scanners built on them.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..analysis.constants import SeedConstants, c_of_seed
from ..analysis.macro import edge_level, level_jump_stats
from ..core.exceptions import InsufficientDepthError, InvariantViolation
from ..forest.triangulation import Triangulation
from ..utils import get_logger
from .builder import AuxTriangulation, neighborhood
from .layers import LayerDecomposition, decompose_layers

logger = get_logger(__name__)

BOUND = "bound"
MESH = "mesh"


@dataclass
class NeighborhoodScan:
    """Result of one scanner; ``counterexample`` names the offending edge or vertex."""

    name: str
    ok: bool = True
    checked: int = 0
    skipped: int = 0
    counterexample: Optional[Tuple] = None

    def fail(self, witness: Tuple) -> None:
        if self.ok:
            self.ok = False
            self.counterexample = witness

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


# ── Sharp chain ──────────────────────────────────────────────────────────────


def sharp_chain(
    aux: AuxTriangulation, length: int, decomposition: Optional[LayerDecomposition] = None
) -> List[int]:
    """
    Intersecting leaves T_0, ..., T_N with level(T_k) = level(T_0) + k.

    T_k is taken from layer k + 1, so the chain needs the first N + 1
    layers to be complete, i.e. depth >= d (N + 1).

    Raises:
        ValueError: If length is negative
        InsufficientDepthError: If the auxiliary triangulation is too shallow
    """
    if length < 0:
        raise ValueError(f"Chain length must be non-negative, got {length}")
    required = aux.d * (length + 1)
    if aux.depth < required:
        raise InsufficientDepthError(f"A sharp chain of length {length} in dimension {aux.d}", required)
    if decomposition is None:
        decomposition = decompose_layers(aux)
    forest = aux.forest

    last = min(decomposition.layers[length + 1])
    chain = [last]
    while decomposition.bfs_parent[chain[-1]] >= 0:
        chain.append(decomposition.bfs_parent[chain[-1]])
    chain.reverse()

    base_level = aux.m + 1
    for k, leaf in enumerate(chain):
        if forest.level(leaf) != base_level + k:
            raise InvariantViolation(
                "aux-sharp-chain",
                f"Leaf {leaf} at position {k} has level {forest.level(leaf)}, expected {base_level + k}",
                witness=chain,
            )
        if k and not set(forest.node_vertices[leaf]) & set(forest.node_vertices[chain[k - 1]]):
            raise InvariantViolation("aux-sharp-chain", f"Leaves {chain[k - 1]} and {leaf} do not intersect")
    logger.info(f"Sharp chain of length {length} at v={aux.vertex}: {chain}")
    return chain


# ── Bisection edges in the layers ────────────────────────────────────────────


def check_bisection_edge_layers(
    aux: AuxTriangulation, decomposition: Optional[LayerDecomposition] = None
) -> NeighborhoodScan:
    """
    Bisection edges of leaves in complete layers.

    In layer l a leaf of type < d has its bisection edge on the interface of
    layers l-1 and l. A leaf of type d has the older endpoint there and the
    younger one on the interface of layers l and l+1. The interface of
    layers 0 and 1 is the base vertex.
    """
    if decomposition is None:
        decomposition = decompose_layers(aux)
    forest = aux.forest
    d = aux.d
    scan = NeighborhoodScan("bisection-edge-layers")

    def on_interface(w: int, ell: int) -> bool:
        if ell == 0:
            return w == aux.vertex
        return decomposition.vertex_layers.get(w) == (ell, ell + 1)

    for ell in range(1, decomposition.complete + 1):
        for leaf in decomposition.layers.get(ell, ()):
            scan.checked += 1
            younger, older = forest.bse[leaf]
            if forest.type(leaf) != d:
                good = on_interface(younger, ell - 1) and on_interface(older, ell - 1)
            else:
                good = on_interface(older, ell - 1) and on_interface(younger, ell)
            if not good:
                scan.fail((leaf, younger, older))
    if not scan.ok:
        logger.warning(f"Bisection edge off its interface: {scan.counterexample}")
    return scan


# ── Neighborhood scanners ────────────────────────────────────────────────────


def _inside_distances(tria: Triangulation, aux: AuxTriangulation) -> Tuple[Dict[int, int], Dict[int, bool]]:
    """Edge distance from the base vertex through mesh vertices inside the neighborhood."""
    edges = tria.edges()
    neighbors: Dict[int, List[int]] = {}
    for a, b in edges:
        neighbors.setdefault(a, []).append(b)
        neighbors.setdefault(b, []).append(a)
    if aux.vertex not in neighbors:
        raise ValueError(f"Vertex {aux.vertex} is not a vertex of the triangulation")
    inside = {w: aux.in_neighborhood(w) for w in neighbors}
    dist = {aux.vertex: 0}
    queue = deque([aux.vertex])
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if inside[w] and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist, inside


def check_leaving_neighborhood(tria: Triangulation, aux: AuxTriangulation) -> NeighborhoodScan:
    """
    Edge chains from the base vertex that leave the neighborhood.

    The last edge of a chain of N edges whose first N vertices stay inside
    has level < m + N. The shortest inside chain to each vertex gives the
    strongest bound, so one BFS covers all chains.
    """
    scan = NeighborhoodScan("leaving-neighborhood")
    dist, inside = _inside_distances(tria, aux)
    forest = tria.forest
    for a, b in tria.edges():
        for u, w in ((a, b), (b, a)):
            if u in dist and not inside[w]:
                scan.checked += 1
                level = edge_level(forest, u, w)
                if level >= aux.m + dist[u] + 1:
                    scan.fail((u, w, level, dist[u] + 1))
    if not scan.ok:
        logger.warning(f"Edge leaving the neighborhood of {aux.vertex} is too fine: {scan.counterexample}")
    return scan


def check_staying_in_neighborhood(tria: Triangulation, aux: AuxTriangulation) -> NeighborhoodScan:
    """
    Edge chains from the base vertex that stay in the neighborhood.

    Only applies when the triangulation is coarser than the infinitely
    refined auxiliary triangulation; otherwise every edge counts as skipped.
    The j-th edge of such a chain has level <= m + j.
    """
    scan = NeighborhoodScan("staying-in-neighborhood")
    dist, inside = _inside_distances(tria, aux)
    edges = tria.edges()
    if not aux.contains_refinement_of(tria):
        scan.skipped = len(edges)
        logger.debug(f"Triangulation is not coarser than the auxiliary triangulation at {aux.vertex}")
        return scan
    forest = tria.forest
    for a, b in edges:
        if a in dist and b in dist:
            scan.checked += 1
            j = min(dist[a], dist[b]) + 1
            level = edge_level(forest, a, b)
            if level > aux.m + j:
                scan.fail((a, b, level, j))
    if not scan.ok:
        logger.warning(f"Edge inside the neighborhood of {aux.vertex} is too fine: {scan.counterexample}")
    return scan


def check_finer_triangulation(
    tria: Triangulation,
    vertices: Optional[Iterable[int]] = None,
    jump: str = BOUND,
    constants: Optional[SeedConstants] = None,
) -> NeighborhoodScan:
    """
    For each vertex v take the smallest m with level(v) < m and
    jump(v) + min level of the edges at v <= m + 1, and check that the
    infinitely refined auxiliary triangulation at v is finer than ``tria``.

    Args:
        tria: Conforming triangulation
        vertices: Vertices to test (default: all mesh vertices)
        jump: "bound" uses 2 + J_n by macro dimension, "mesh" the jump measured on ``tria``
        constants: Seed constants for the bound

    Returns:
        NeighborhoodScan with (vertex, m) as counterexample
    """
    if jump not in (BOUND, MESH):
        raise ValueError(f"jump must be '{BOUND}' or '{MESH}', got {jump!r}")
    forest = tria.forest
    if jump == BOUND and constants is None:
        constants = c_of_seed(forest)
    measured = level_jump_stats(tria, constants=constants).jumps if jump == MESH else None

    min_edge_level: Dict[int, int] = {}
    for a, b in tria.edges():
        level = edge_level(forest, a, b)
        for w in (a, b):
            min_edge_level[w] = min(min_edge_level.get(w, level), level)

    scan = NeighborhoodScan(f"finer-triangulation-{jump}")
    for v in sorted(min_edge_level) if vertices is None else vertices:
        j = measured[v] if measured is not None else constants.jump_bound(forest.macro_dimension(v))
        m = max(forest.vertex_level(v) + 1, j + min_edge_level[v] - 1)
        scan.checked += 1
        if not neighborhood(forest, v, m).contains_refinement_of(tria):
            scan.fail((v, m))
    if not scan.ok:
        logger.warning(f"Auxiliary triangulation is not finer than the mesh at {scan.counterexample}")
    return scan
