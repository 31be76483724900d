"""Triangulations as leaf sets of a forest, and the lattice operations."""

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Set, Tuple

import numpy as np

from ..core.exceptions import ForestMismatchError
from .forest import Forest


class Triangulation:
    """
    Immutable view: a set of forest leaves covering the domain.

    Leaves are kept as a sorted id array. Views are cheap, can be shared
    between threads and stay valid while the forest grows.
    """

    def __init__(self, forest: Forest, leaf_ids: Iterable[int]):
        self.forest = forest
        self.leaf_ids = np.unique(np.fromiter(leaf_ids, dtype=np.int64))
        self._leaf_set = None
        self._star = None

    def __len__(self) -> int:
        return int(self.leaf_ids.size)

    def __iter__(self) -> Iterator[int]:
        return (int(i) for i in self.leaf_ids)

    def __contains__(self, nid: int) -> bool:
        return nid in self.leaf_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.forest is other.forest and np.array_equal(self.leaf_ids, other.leaf_ids)

    def __hash__(self) -> int:
        return hash((id(self.forest), self.leaf_ids.tobytes()))

    def __repr__(self) -> str:
        return f"Triangulation(d={self.forest.d}, leaves={len(self)})"

    @property
    def d(self) -> int:
        return self.forest.d

    @property
    def leaf_set(self) -> Set[int]:
        if self._leaf_set is None:
            self._leaf_set = set(int(i) for i in self.leaf_ids)
        return self._leaf_set

    def leaves(self) -> List[int]:
        return [int(i) for i in self.leaf_ids]

    def generations(self) -> np.ndarray:
        gens = self.forest.node_generation
        return np.array([gens[i] for i in self.leaf_ids], dtype=np.int64)

    def levels(self) -> np.ndarray:
        return -((-self.generations()) // self.d)

    def total_volume(self) -> Fraction:
        """Exact sum of leaf volumes via |T| = 2^-gen |root|."""
        return sum((self.forest.node_volume(int(i)) for i in self.leaf_ids), Fraction(0))

    # ── Incidence ────────────────────────────────────────────────────────────

    def vertex_star(self) -> Dict[int, List[int]]:
        """Leaves incident to each vertex, in leaf id order."""
        if self._star is None:
            star: Dict[int, List[int]] = defaultdict(list)
            verts = self.forest.node_vertices
            for nid in self.leaf_ids:
                for v in verts[nid]:
                    star[v].append(int(nid))
            self._star = dict(star)
        return self._star

    def vertex_ids(self) -> List[int]:
        return sorted(self.vertex_star())

    def edges(self) -> Dict[Tuple[int, int], List[int]]:
        """Edge key (sorted vertex pair) -> leaves containing the edge."""
        edges: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        verts = self.forest.node_vertices
        for nid in self.leaf_ids:
            for a, b in combinations(verts[nid], 2):
                edges[(a, b) if a < b else (b, a)].append(int(nid))
        return dict(edges)

    def edge_patch(self, a: int, b: int) -> List[int]:
        star = self.vertex_star()
        other = set(star.get(b, ()))
        return [t for t in star.get(a, ()) if t in other]

    # ── Lattice ──────────────────────────────────────────────────────────────

    def forest_mask(self) -> np.ndarray:
        """Boolean mask over the arena: the leaves plus all their ancestors."""
        parent = self.forest.parent_array()
        mask = np.zeros(len(parent), dtype=bool)
        current = self.leaf_ids
        mask[current] = True
        while current.size:
            p = parent[current]
            p = np.unique(p[p >= 0])
            p = p[~mask[p]]
            mask[p] = True
            current = p
        return mask

    def _check_forest(self, other: "Triangulation") -> None:
        if self.forest is not other.forest:
            raise ForestMismatchError("Triangulations belong to different forests")

    def join(self, other: "Triangulation") -> "Triangulation":
        """Coarsest common refinement (union of forests)."""
        self._check_forest(other)
        return leaves_of_mask(self.forest, self.forest_mask() | other.forest_mask())

    def meet(self, other: "Triangulation") -> "Triangulation":
        """Finest common coarsening (intersection of forests)."""
        self._check_forest(other)
        return leaves_of_mask(self.forest, self.forest_mask() & other.forest_mask())

    def is_refinement(self, other: "Triangulation") -> bool:
        """True if ``other`` refines ``self`` (forest(self) is contained in forest(other))."""
        self._check_forest(other)
        mine = self.forest_mask()
        theirs = other.forest_mask()
        return not bool(np.any(mine & ~theirs))


def leaves_of_mask(forest: Forest, mask: np.ndarray) -> Triangulation:
    """Leaves of a forest given as node mask: members whose children are not members."""
    members = np.flatnonzero(mask)
    child = np.asarray(forest.child1, dtype=np.int64)[members]
    has_child = child >= 0
    inner = np.zeros(members.size, dtype=bool)
    inner[has_child] = mask[child[has_child]]
    return Triangulation(forest, members[~inner])


def join(t1: Triangulation, t2: Triangulation) -> Triangulation:
    return t1.join(t2)


def meet(t1: Triangulation, t2: Triangulation) -> Triangulation:
    return t1.meet(t2)


def is_refinement(t1: Triangulation, t2: Triangulation) -> bool:
    """True iff every node of forest(t1) is in forest(t2)."""
    return t1.is_refinement(t2)
