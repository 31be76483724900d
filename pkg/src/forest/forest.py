"""Append-only arena of all simplices created by bisection."""

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..bisection.rules import bisection_edge_positions
from ..bisection.simplex import SortedSimplex, head_tail_split, sort_by_generation
from ..core.arith import level_of, type_of
from ..core.dyadic import DyadicPoint
from ..core.exceptions import InvariantViolation, SeedError
from ..core.geometry import (
    BarycentricMatrix,
    apply_barycentric,
    barycentric_matrix,
    simplex_volume,
)
from ..core.vertices import VertexTable
from ..utils import get_logger

logger = get_logger(__name__)

Coordinates = Dict[int, Fraction]


@dataclass(frozen=True)
class SimplexNode:
    """Read-only view of one arena entry."""

    id: int
    vertex_ids: Tuple[int, ...]
    generation: int
    parent: int
    children: Optional[Tuple[int, int]]
    root: int

    @property
    def is_root(self) -> bool:
        return self.parent < 0


class Forest:
    """
    Master forest over an initial triangulation.

    Node ``i`` stores its vertex ids sorted by decreasing generation, its
    generation, its parent and (once bisected) its two children. Children
    always get larger ids than their parent. Bisecting a node that was
    bisected before returns the existing children, so any number of
    triangulations can share one genealogy.

    One writer at a time: ``bisect`` holds ``self.lock``.
    """

    def __init__(self, vertices: VertexTable, roots: Sequence[Sequence[int]], colors=None):
        """
        Initialize a forest.

        Args:
            vertices: Vertex table with the seed vertices and their generations
            roots: Vertex ids of the root simplices
            colors: Optional seed coloring (kept for export)
        """
        self.vertices = vertices
        self.d = vertices.dim
        self.colors: Optional[List[int]] = list(colors) if colors is not None else None
        self.lock = threading.RLock()

        self.node_vertices: List[Tuple[int, ...]] = []
        self.node_generation: List[int] = []
        self.parent: List[int] = []
        self.child1: List[int] = []
        self.child2: List[int] = []
        self.root_of: List[int] = []
        self.bse: List[Tuple[int, int]] = []
        self.head = bytearray()

        self._parent_array: Optional[np.ndarray] = None
        self._root_volume: Dict[int, Fraction] = {}
        self._root_matrix: Dict[int, BarycentricMatrix] = {}
        self._root_boxes: Dict[int, Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]] = {}
        self._macro_dims: Dict[int, int] = {}
        self._boundary_facets: Optional[set] = None

        for ids in roots:
            ordered = sort_by_generation(ids, vertices.generation)
            gen = vertices.generation(ordered[0])
            if gen != 0:
                raise SeedError(f"Root {tuple(ids)} has generation {gen}, expected 0")
            self._append(ordered, 0, -1)
        self.roots: Tuple[int, ...] = tuple(range(len(self.node_vertices)))
        for r in self.roots:
            self._root_volume[r] = simplex_volume([vertices.point(v) for v in self.node_vertices[r]])
        logger.info(f"Forest initialized with {len(self.roots)} roots in dimension {self.d}")

    @classmethod
    def from_seed(cls, seed, validate: bool = True) -> "Forest":
        """
        Create a forest from a colored seed triangulation.

        Raises:
            SeedError: If the seed is invalid or uncolored
        """
        from ..seed import assign_initial_generations, validate_seed

        if validate:
            validate_seed(seed)
        if seed.colors is None:
            raise SeedError("Seed is not colored; run onboarding first")
        gens = assign_initial_generations(seed)
        table = VertexTable(seed.dim)
        for point, gen in zip(seed.points, gens):
            table.add(point, gen)
        return cls(table, seed.simplices, colors=seed.colors)

    # ── Arena ────────────────────────────────────────────────────────────────

    def _append(self, ordered: Tuple[int, ...], gen: int, parent: int) -> int:
        gens = [self.vertices.generation(v) for v in ordered]
        i, j = bisection_edge_positions(gens, self.d)
        nid = len(self.node_vertices)
        self.node_vertices.append(ordered)
        self.node_generation.append(gen)
        self.parent.append(parent)
        self.child1.append(-1)
        self.child2.append(-1)
        self.root_of.append(nid if parent < 0 else self.root_of[parent])
        self.bse.append((ordered[i], ordered[j]))
        self.head.append(head_tail_split(gens, self.d))
        self._parent_array = None
        return nid

    def __len__(self) -> int:
        return len(self.node_vertices)

    def bisect(self, node: int) -> Tuple[int, int]:
        """
        Bisect a node (or return its existing children).

        Returns:
            Ids of the child without the younger bisection-edge endpoint and
            of the child without the older one
        """
        with self.lock:
            if self.child1[node] >= 0:
                return self.child1[node], self.child2[node]
            ids = self.node_vertices[node]
            a, b = self.bse[node]
            gen = self.node_generation[node] + 1
            mid = self.vertices.midpoint_vertex(a, b, gen)
            c1 = self._append((mid,) + tuple(v for v in ids if v != a), gen, node)
            c2 = self._append((mid,) + tuple(v for v in ids if v != b), gen, node)
            self.child1[node] = c1
            self.child2[node] = c2
            return c1, c2

    def children(self, node: int) -> Optional[Tuple[int, int]]:
        if self.child1[node] < 0:
            return None
        return self.child1[node], self.child2[node]

    def node(self, nid: int) -> SimplexNode:
        return SimplexNode(
            id=nid,
            vertex_ids=self.node_vertices[nid],
            generation=self.node_generation[nid],
            parent=self.parent[nid],
            children=self.children(nid),
            root=self.root_of[nid],
        )

    def sorted_simplex(self, nid: int) -> SortedSimplex:
        ids = self.node_vertices[nid]
        return SortedSimplex(ids, tuple(self.vertices.generation(v) for v in ids))

    def vertex_generations(self, nid: int) -> Tuple[int, ...]:
        return tuple(self.vertices.generation(v) for v in self.node_vertices[nid])

    def level(self, nid: int) -> int:
        return level_of(self.node_generation[nid], self.d)

    def type(self, nid: int) -> int:
        return type_of(self.node_generation[nid], self.d)

    def vertex_level(self, vid: int) -> int:
        return level_of(self.vertices.generation(vid), self.d)

    def parent_array(self) -> np.ndarray:
        """Parents as an int64 array (-1 for roots), cached until the next bisection."""
        if self._parent_array is None or len(self._parent_array) != len(self.parent):
            self._parent_array = np.asarray(self.parent, dtype=np.int64)
        return self._parent_array

    def ancestor_at_generation(self, nid: int, gen: int) -> int:
        """Ancestor (or the node itself) with the given generation."""
        if gen > self.node_generation[nid] or gen < 0:
            raise ValueError(f"Node {nid} has no ancestor of generation {gen}")
        while self.node_generation[nid] > gen:
            nid = self.parent[nid]
        return nid

    def ancestors(self, nid: int) -> List[int]:
        """Node followed by its ancestors up to the root."""
        chain = [nid]
        while self.parent[chain[-1]] >= 0:
            chain.append(self.parent[chain[-1]])
        return chain

    # ── Geometry ─────────────────────────────────────────────────────────────

    def points(self, nid: int) -> List[DyadicPoint]:
        return [self.vertices.point(v) for v in self.node_vertices[nid]]

    def root_volume(self, root: int) -> Fraction:
        return self._root_volume[root]

    def node_volume(self, nid: int) -> Fraction:
        """Volume from the halving rule |T| = 2^-gen |root|."""
        return self._root_volume[self.root_of[nid]] / (1 << self.node_generation[nid])

    def domain_volume(self) -> Fraction:
        return sum(self._root_volume.values(), Fraction(0))

    def root_barycentric(self, root: int, point: DyadicPoint) -> Optional[Tuple[Fraction, ...]]:
        """
        Barycentric coordinates of a point with respect to a root.

        Returns None if the point is outside the root's bounding box.
        """
        box = self._root_boxes.get(root)
        if box is None:
            coords = [p.to_fractions() for p in self.points(root)]
            lo = tuple(min(c[i] for c in coords) for i in range(self.d))
            hi = tuple(max(c[i] for c in coords) for i in range(self.d))
            box = self._root_boxes[root] = (lo, hi)
        x = point.to_fractions()
        if any(x[i] < box[0][i] or x[i] > box[1][i] for i in range(self.d)):
            return None
        matrix = self._root_matrix.get(root)
        if matrix is None:
            matrix = self._root_matrix[root] = barycentric_matrix(self.points(root))
        return apply_barycentric(matrix, point)

    def containing_roots(self, point: DyadicPoint) -> List[Tuple[int, Coordinates]]:
        """Roots whose closed simplex contains the point, with coordinates."""
        found = []
        for r in self.roots:
            lam = self.root_barycentric(r, point)
            if lam is not None and all(c >= 0 for c in lam):
                found.append((r, dict(zip(self.node_vertices[r], lam))))
        return found

    def locate(self, point: DyadicPoint, generation: int) -> List[Tuple[int, Coordinates]]:
        """
        All nodes of a given generation whose closed simplex contains a point.

        Descends from the containing roots, bisecting as needed. Barycentric
        coordinates are carried down exactly: the child that keeps endpoint
        ``s`` of the bisection edge ``(f, s)`` gets ``2*lam_f`` at the new
        vertex and ``lam_s - lam_f`` at ``s``.

        Returns:
            (node id, barycentric coordinates by vertex id) pairs
        """
        frontier = self.containing_roots(point)
        for _ in range(generation):
            nxt = []
            for nid, lam in frontier:
                c1, c2 = self.bisect(nid)
                a, b = self.bse[nid]
                mid = self.node_vertices[c1][0]
                if lam[b] >= lam[a]:
                    child = {v: c for v, c in lam.items() if v != a}
                    child[b] = lam[b] - lam[a]
                    child[mid] = 2 * lam[a]
                    nxt.append((c1, child))
                if lam[a] >= lam[b]:
                    child = {v: c for v, c in lam.items() if v != b}
                    child[a] = lam[a] - lam[b]
                    child[mid] = 2 * lam[b]
                    nxt.append((c2, child))
            frontier = nxt
        return frontier

    # ── Boundary ─────────────────────────────────────────────────────────────

    def root_boundary_facets(self) -> set:
        """Root facets (vertex frozensets) that belong to a single root."""
        if self._boundary_facets is None:
            counts: Dict[frozenset, int] = {}
            for r in self.roots:
                ids = self.node_vertices[r]
                for i in range(self.d + 1):
                    f = frozenset(ids[:i] + ids[i + 1 :])
                    counts[f] = counts.get(f, 0) + 1
            self._boundary_facets = {f for f, c in counts.items() if c == 1}
        return self._boundary_facets

    def facet_on_boundary(self, nid: int, facet: Sequence[int]) -> bool:
        """True if a facet of a node lies on the boundary of the domain."""
        root = self.root_of[nid]
        root_ids = self.node_vertices[root]
        boundary = self.root_boundary_facets()
        coords = []
        for v in facet:
            lam = self.root_barycentric(root, self.vertices.point(v))
            if lam is None:
                raise InvariantViolation("forest-geometry", f"Vertex {v} lies outside root {root}")
            coords.append(lam)
        for i in range(self.d + 1):
            if all(c[i] == 0 for c in coords):
                if frozenset(root_ids[:i] + root_ids[i + 1 :]) in boundary:
                    return True
        return False

    # ── Macro dimension ──────────────────────────────────────────────────────

    def macro_dimension(self, vid: int) -> int:
        """
        Dimension of the smallest closed root subsimplex containing a vertex.

        Cached per vertex.
        """
        cached = self._macro_dims.get(vid)
        if cached is not None:
            return cached
        point = self.vertices.point(vid)
        best = self.d
        for _, lam in self.containing_roots(point):
            support = sum(1 for c in lam.values() if c != 0)
            best = min(best, support - 1)
        self._macro_dims[vid] = best
        return best


def new_forest(seed, validate: bool = True):
    """
    Create a forest and its initial triangulation from a colored seed.

    Returns:
        (Forest, Triangulation of the roots)
    """
    from .triangulation import Triangulation

    forest = Forest.from_seed(seed, validate=validate)
    return forest, Triangulation(forest, forest.roots)
