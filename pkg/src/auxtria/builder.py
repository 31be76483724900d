"""Strongly graded auxiliary triangulation around a vertex."""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..core.dyadic import DyadicPoint
from ..core.exceptions import ForestMismatchError, InvariantViolation
from ..core.geometry import BarycentricMatrix, apply_barycentric, barycentric_matrix
from ..forest.forest import Forest
from ..forest.triangulation import Triangulation
from ..utils import get_config, get_logger

logger = get_logger(__name__)

BOUNDARY_LAYER = 0


def uniform_generation(forest: Forest, generation: int, nodes: Optional[Sequence[int]] = None) -> List[int]:
    """All descendants of ``nodes`` (default: the roots) with the given generation."""
    frontier = list(forest.roots if nodes is None else nodes)
    while frontier and forest.node_generation[frontier[0]] < generation:
        nxt = []
        for nid in frontier:
            nxt.extend(forest.bisect(nid))
        frontier = nxt
    return frontier


class AuxTriangulation:
    """
    Vertex patch of generation m*d around ``vertex``, refined ``depth`` times
    at its boundary.

    The boundary of the patch is the union of the facets opposite ``vertex``.
    A patch vertex other than ``vertex`` lies on it; a later vertex lies on it
    iff both endpoints of the edge it bisects do. A simplex touches the
    boundary iff one of its vertices does.

    ``layer[leaf]`` is the layer index l >= 1 of leaves that stopped touching
    the boundary, and 0 for the boundary layer.
    """

    def __init__(self, forest: Forest, vertex: int, m: int, depth: int):
        self.forest = forest
        self.vertex = vertex
        self.m = m
        self.depth = depth
        self.d = forest.d
        self.base_generation = m * self.d

        self.patch: Tuple[int, ...] = ()
        self.leaves: List[int] = []
        self.layer: Dict[int, int] = {}
        self._on_boundary: Dict[int, bool] = {}
        self._matrices: Dict[int, BarycentricMatrix] = {}
        self._box: Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]] = None
        self._in_forest: Dict[int, bool] = {}
        self._patch_set: Set[int] = set()
        self._anchor_outside: Dict[int, bool] = {}

    def __repr__(self) -> str:
        return f"AuxTriangulation(v={self.vertex}, m={self.m}, j={self.depth}, leaves={len(self.leaves)})"

    # ── Boundary status ──────────────────────────────────────────────────────

    def on_boundary(self, vid: int) -> bool:
        """Boundary status of a vertex seen inside the patch."""
        return self._on_boundary[vid]

    def _resolve(self, node: int) -> None:
        """Assign boundary status to the vertices of a patch descendant."""
        forest = self.forest
        chain = []
        current = node
        while any(w not in self._on_boundary for w in forest.node_vertices[current]):
            chain.append(current)
            current = forest.parent[current]
            if current < 0:
                raise InvariantViolation("aux-patch", f"Node {node} is not a descendant of the patch")
        for child in reversed(chain):
            parent = forest.parent[child]
            a, b = forest.bse[parent]
            mid = forest.node_vertices[child][0]
            if mid not in self._on_boundary:
                self._on_boundary[mid] = self._on_boundary[a] and self._on_boundary[b]

    def touches_boundary(self, node: int) -> bool:
        self._resolve(node)
        return any(self._on_boundary[w] for w in self.forest.node_vertices[node])

    @property
    def complete_layers(self) -> int:
        """Number of layers that are final at this depth."""
        return self.depth // self.d

    def boundary_leaves(self) -> List[int]:
        return [t for t in self.leaves if self.layer[t] == BOUNDARY_LAYER]

    def leaves_in_layer(self, ell: int) -> List[int]:
        return [t for t in self.leaves if self.layer[t] == ell]

    def patch_triangulation(self) -> Triangulation:
        """The refined patch as a triangulation view (it does not cover the domain)."""
        return Triangulation(self.forest, self.leaves)

    # ── Geometry of the neighborhood ─────────────────────────────────────────

    def _patch_box(self):
        if self._box is None:
            coords = [self.forest.vertices.point(w).to_fractions() for p in self.patch for w in self.forest.node_vertices[p]]
            lo = tuple(min(c[i] for c in coords) for i in range(self.d))
            hi = tuple(max(c[i] for c in coords) for i in range(self.d))
            self._box = (lo, hi)
        return self._box

    def locate_in_patch(self, point: DyadicPoint) -> Optional[Tuple[int, Dict[int, Fraction]]]:
        """A patch simplex containing the point, with barycentric coordinates."""
        lo, hi = self._patch_box()
        x = point.to_fractions()
        if any(x[i] < lo[i] or x[i] > hi[i] for i in range(self.d)):
            return None
        for p in self.patch:
            matrix = self._matrices.get(p)
            if matrix is None:
                matrix = self._matrices[p] = barycentric_matrix(self.forest.points(p))
            lam = apply_barycentric(matrix, point)
            if all(c >= 0 for c in lam):
                return p, dict(zip(self.forest.node_vertices[p], lam))
        return None

    def in_neighborhood(self, vid: int) -> bool:
        """True if a vertex lies in the open neighborhood (patch minus its boundary)."""
        found = self.locate_in_patch(self.forest.vertices.point(vid))
        return found is not None and found[1][self.vertex] > 0

    # ── Refinement relation ──────────────────────────────────────────────────

    def _outside_patch(self, node: int) -> bool:
        """True if a node of generation >= m*d descends from a simplex outside the patch."""
        anchor = self.forest.ancestor_at_generation(node, self.base_generation)
        outside = self._anchor_outside.get(anchor)
        if outside is None:
            outside = self._anchor_outside[anchor] = anchor not in self._patch_set
        return outside

    def _node_in_forest(self, node: int) -> bool:
        """Is ``node`` in the genealogy of the infinitely refined auxiliary triangulation?"""
        forest = self.forest
        gen = forest.node_generation
        chain = []
        current = node
        while gen[current] > self.base_generation + 1 and current not in self._in_forest:
            chain.append(current)
            current = forest.parent[current]
        ok = self._in_forest.get(current, True)
        for child in reversed(chain):
            parent = forest.parent[child]
            if ok:
                ok = self._outside_patch(parent) or self.touches_boundary(parent)
            self._in_forest[child] = ok
        return ok

    def contains_refinement_of(self, tria: Triangulation) -> bool:
        """
        True if ``tria`` is coarser than the auxiliary triangulation refined
        infinitely often at the patch boundary (outside the patch every
        simplex qualifies).
        """
        if tria.forest is not self.forest:
            raise ForestMismatchError("Triangulation and auxiliary triangulation use different forests")
        for node in tria.forest_mask().nonzero()[0]:
            if not self._node_in_forest(int(node)):
                logger.debug(f"Node {int(node)} is finer than the auxiliary triangulation")
                return False
        return True

    # ── Full triangulation ───────────────────────────────────────────────────

    def triangulation(self) -> Triangulation:
        """
        The conforming triangulation of the whole domain: the refined patch
        plus the uniform mesh of generation m*d + depth outside of it.
        """
        warn = get_config().get("aux", "warn_leaf_count", default=200000)
        outside = [t for t in uniform_generation(self.forest, self.base_generation) if t not in self._patch_set]
        expected = len(outside) * (1 << self.depth) + len(self.leaves)
        if expected > warn:
            logger.warning(f"Materializing {expected} leaves for the auxiliary triangulation")
        leaves = uniform_generation(self.forest, self.base_generation + self.depth, outside) if outside else []
        return Triangulation(self.forest, list(leaves) + self.leaves)

    def to_layer_array(self) -> Dict[int, int]:
        return dict(self.layer)


def build_aux(forest: Forest, vertex: int, m: int, depth: int) -> AuxTriangulation:
    """
    Build the auxiliary triangulation of a vertex.

    Starts from the uniform vertex patch of generation m*d and performs
    ``depth`` rounds, each bisecting exactly the simplices that touch the
    patch boundary. Every round is checked to need no closure: the bisection
    edge of each refined simplex must touch the boundary as well.

    Args:
        forest: Master forest
        vertex: Vertex id
        m: Patch level, larger than level(vertex)
        depth: Number of boundary refinement rounds

    Returns:
        AuxTriangulation with eager layer indices

    Raises:
        ValueError: If level(vertex) >= m or depth < 0
        InvariantViolation: If a round would need a closure
    """
    d = forest.d
    if not 0 <= vertex < len(forest.vertices):
        raise ValueError(f"Unknown vertex {vertex}")
    if forest.vertex_level(vertex) >= m:
        raise ValueError(f"Patch level m={m} must exceed level(v)={forest.vertex_level(vertex)}")
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")

    aux = AuxTriangulation(forest, vertex, m, depth)
    point = forest.vertices.point(vertex)
    patch = []
    for nid, _ in forest.locate(point, m * d):
        if vertex not in forest.node_vertices[nid]:
            raise InvariantViolation(
                "aux-patch", f"Simplex {nid} of generation {m * d} contains vertex {vertex} only geometrically"
            )
        patch.append(nid)
    aux.patch = tuple(sorted(set(patch)))
    aux._patch_set = set(aux.patch)
    for p in aux.patch:
        for w in forest.node_vertices[p]:
            aux._on_boundary[w] = w != vertex

    current = list(aux.patch)
    frozen: Dict[int, int] = {}
    for rnd in range(1, depth + 1):
        nxt = []
        for nid in current:
            if not aux.touches_boundary(nid):
                nxt.append(nid)
                continue
            a, b = forest.bse[nid]
            if not (aux.on_boundary(a) or aux.on_boundary(b)):
                raise InvariantViolation(
                    "aux-no-closure",
                    f"Round {rnd}: simplex {nid} touches the patch boundary but its bisection edge ({a}, {b}) does not",
                    witness=nid,
                )
            for child in forest.bisect(nid):
                aux._resolve(child)
                if not aux.touches_boundary(child):
                    frozen[child] = rnd
                nxt.append(child)
        current = nxt

    aux.leaves = sorted(current)
    for t in aux.leaves:
        rnd = frozen.get(t)
        aux.layer[t] = BOUNDARY_LAYER if rnd is None else -(-rnd // d)
        if rnd is None and forest.node_generation[t] != m * d + depth:
            raise InvariantViolation(
                "aux-boundary-generation",
                f"Boundary leaf {t} has generation {forest.node_generation[t]}, expected {m * d + depth}",
                witness=t,
            )
    logger.info(
        f"Auxiliary triangulation at v={vertex}, m={m}, j={depth}: {len(aux.patch)} patch simplices, "
        f"{len(aux.leaves)} leaves, {len(aux.boundary_leaves())} at the boundary"
    )
    return aux


def neighborhood(forest: Forest, vertex: int, m: int) -> AuxTriangulation:
    """The unrefined vertex patch; enough for neighborhood membership tests."""
    return build_aux(forest, vertex, m, 0)


def minimal_patch_level(forest: Forest, vertex: int) -> int:
    return forest.vertex_level(vertex) + 1


def on_domain_boundary(forest: Forest, vertex: int) -> bool:
    """True if the vertex lies on a boundary facet of the initial triangulation."""
    boundary = forest.root_boundary_facets()
    for root, lam in forest.containing_roots(forest.vertices.point(vertex)):
        ids = forest.node_vertices[root]
        for i, w in enumerate(ids):
            if lam[w] == 0 and frozenset(ids[:i] + ids[i + 1 :]) in boundary:
                return True
    return False


def pick_interior_vertex(tria: Triangulation) -> int:
    """Oldest interior mesh vertex (smallest generation, then id); vertex 0 if there is none."""
    forest = tria.forest
    for vid in sorted(tria.vertex_ids(), key=lambda w: (forest.vertices.generation(w), w)):
        if not on_domain_boundary(forest, vid):
            return vid
    logger.warning("Triangulation has no interior vertex; using vertex 0")
    return 0
