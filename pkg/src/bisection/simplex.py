"""Simplex representations used by the bisection rules."""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Sequence, Tuple

from ..core.arith import level_of
from ..core.exceptions import InvariantViolation, SeedError


@dataclass(frozen=True)
class Edge:
    """Edge between two distinct vertices, ``first`` being the younger one."""

    first: int
    second: int

    def __post_init__(self):
        if self.first == self.second:
            raise ValueError(f"Edge endpoints must differ, got {self.first} twice")

    @classmethod
    def ordered(cls, a: int, b: int, generation: Callable[[int], int]) -> "Edge":
        """Build an edge with the younger vertex first."""
        if generation(a) >= generation(b):
            return cls(a, b)
        return cls(b, a)

    @property
    def key(self) -> Tuple[int, int]:
        """Orientation-free lookup key."""
        return (self.first, self.second) if self.first < self.second else (self.second, self.first)

    def __iter__(self) -> Iterator[int]:
        yield self.first
        yield self.second


@dataclass(frozen=True)
class SortedSimplex:
    """
    Simplex with vertices sorted by strictly decreasing generation.

    The same type is used for d-simplices and for m-subsimplices; an
    m-subsimplex does not know the ambient dimension, so rules that need
    it take ``d`` explicitly.
    """

    vertex_ids: Tuple[int, ...]
    vertex_generations: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertex_ids) != len(self.vertex_generations):
            raise ValueError("vertex_ids and vertex_generations differ in length")
        gens = self.vertex_generations
        for i in range(len(gens) - 1):
            if gens[i] <= gens[i + 1]:
                raise InvariantViolation(
                    "distinct-vertex-generations",
                    f"Generations {gens} are not strictly decreasing",
                    witness=self.vertex_ids,
                )

    @classmethod
    def from_vertices(cls, ids: Sequence[int], generation: Callable[[int], int]) -> "SortedSimplex":
        """Sort arbitrary vertex ids by decreasing generation."""
        ordered = sort_by_generation(ids, generation)
        return cls(ordered, tuple(generation(v) for v in ordered))

    @property
    def generation(self) -> int:
        """Generation of the simplex, the largest vertex generation."""
        return self.vertex_generations[0]

    @property
    def dim(self) -> int:
        return len(self.vertex_ids) - 1

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertex_ids)

    def subsimplex(self, indices: Sequence[int]) -> "SortedSimplex":
        """Subsimplex spanned by the given (increasing) positions."""
        idx = sorted(indices)
        return SortedSimplex(
            tuple(self.vertex_ids[i] for i in idx),
            tuple(self.vertex_generations[i] for i in idx),
        )

    def edges(self) -> Iterator["SortedSimplex"]:
        for i, j in combinations(range(len(self.vertex_ids)), 2):
            yield self.subsimplex((i, j))

    def faces(self, m: int) -> Iterator["SortedSimplex"]:
        """All m-subsimplices."""
        for idx in combinations(range(len(self.vertex_ids)), m + 1):
            yield self.subsimplex(idx)


@dataclass(frozen=True)
class MaubachSimplex:
    """Vertex ids in Maubach order ``[v0, ..., vd]`` with the simplex generation."""

    vertex_ids: Tuple[int, ...]
    generation: int

    @property
    def dim(self) -> int:
        return len(self.vertex_ids) - 1

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertex_ids)


@dataclass(frozen=True)
class TraxlerSimplex:
    """Vertex ids in Traxler order with the simplex generation."""

    vertex_ids: Tuple[int, ...]
    generation: int

    @property
    def dim(self) -> int:
        return len(self.vertex_ids) - 1

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertex_ids)


def sort_by_generation(ids: Sequence[int], generation: Callable[[int], int]) -> Tuple[int, ...]:
    """Order vertex ids by decreasing generation."""
    return tuple(sorted(ids, key=generation, reverse=True))


def head_tail_split(vertex_generations: Sequence[int], d: int) -> int:
    """
    Index of the first tail vertex.

    The tail is the block of (oldest) vertices sharing the level of the
    last vertex; the head is everything before it. The returned index is
    the level-jump marker of the sorted simplex.
    """
    last = level_of(vertex_generations[-1], d)
    for i, g in enumerate(vertex_generations):
        if level_of(g, d) == last:
            return i
    return len(vertex_generations) - 1


def maubach_order_from_colors(ids: Sequence[int], colors: Sequence[int], d: int) -> Tuple[int, ...]:
    """
    Root ordering for Maubach and Traxler from a (d+1)-coloring.

    Vertices are ordered by color as ``(d, 0, 1, ..., d-1)``.

    Raises:
        SeedError: If the simplex does not see every color exactly once
    """
    if sorted(colors) != list(range(d + 1)):
        raise SeedError(f"Simplex {tuple(ids)} has colors {tuple(colors)}, expected 0..{d}")
    pairs = sorted(zip(ids, colors), key=lambda p: (p[1] + 1) % (d + 1))
    return tuple(v for v, _ in pairs)
