"""
Bisection rules for single simplices.

Three equivalent procedures bisect a d-simplex: Maubach's (index k),
Traxler's (tag gamma) and the generation based rule that only needs the
vertices sorted by generation. A fourth rule determines the bisection
edge and the generation of the bisection vertex of any subsimplex, which
defines the sharp generation of edges and subsimplices.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from ..core.arith import level_of, maubach_k, traxler_gamma, type_of
from ..core.vertices import VertexTable
from .simplex import Edge, MaubachSimplex, SortedSimplex, TraxlerSimplex


@dataclass(frozen=True)
class MaubachBisection:
    child1: MaubachSimplex
    child2: MaubachSimplex
    bse: Edge
    vertex: int


@dataclass(frozen=True)
class TraxlerBisection:
    child1: TraxlerSimplex
    child2: TraxlerSimplex
    bse: Edge
    vertex: int


@dataclass(frozen=True)
class GenerationBisection:
    child1: SortedSimplex
    child2: SortedSimplex
    bse: Edge
    vertex: int


def _ordered_edge(a: int, b: int, vertices: VertexTable) -> Edge:
    return Edge.ordered(a, b, vertices.generation)


def bisect_maubach(
    simplex: MaubachSimplex,
    vertices: VertexTable,
    vertex_generation: Optional[int] = None,
) -> MaubachBisection:
    """
    Maubach bisection of ``[v0, ..., vd]``.

    The bisection edge is ``[v0, vk]`` with ``k = d - (gen mod d)``.

    Args:
        simplex: Simplex in Maubach order
        vertices: Vertex table receiving the midpoint
        vertex_generation: Generation stored for the midpoint (default gen + 1)

    Returns:
        Both children (generation + 1), the bisection edge and vertex
    """
    ids = simplex.vertex_ids
    d = len(ids) - 1
    k = maubach_k(simplex.generation, d)
    gen = simplex.generation + 1
    b = vertices.midpoint_vertex(ids[0], ids[k], gen if vertex_generation is None else vertex_generation)
    child1 = MaubachSimplex(ids[:k] + (b,) + ids[k + 1 :], gen)
    child2 = MaubachSimplex(ids[1 : k + 1] + (b,) + ids[k + 1 :], gen)
    return MaubachBisection(child1, child2, _ordered_edge(ids[0], ids[k], vertices), b)


def bisect_traxler(simplex: TraxlerSimplex, vertices: VertexTable) -> TraxlerBisection:
    """
    Traxler bisection: the edge ``[v0, vd]`` is always split, the tag
    ``gamma = gen mod d`` decides how the second child is ordered.
    """
    ids = simplex.vertex_ids
    d = len(ids) - 1
    gamma = traxler_gamma(simplex.generation, d)
    b = vertices.midpoint_vertex(ids[0], ids[d], simplex.generation + 1)
    gen = simplex.generation + 1
    child1 = TraxlerSimplex((ids[0], b) + ids[1:d], gen)
    child2 = TraxlerSimplex(
        (ids[d], b) + ids[1 : gamma + 1] + tuple(reversed(ids[gamma + 1 : d])), gen
    )
    return TraxlerBisection(child1, child2, _ordered_edge(ids[0], ids[d], vertices), b)


def bisection_edge_positions(vertex_generations: Sequence[int], d: int) -> Tuple[int, int]:
    """
    Positions of the bisection edge inside a generation-sorted d-simplex.

    Two oldest vertices if the last vertex jumps a level, otherwise the
    youngest and the oldest vertex of the tail.
    """
    if level_of(vertex_generations[d], d) != level_of(vertex_generations[d - 1], d):
        return d - 1, d
    return type_of(vertex_generations[0], d), d


def bisect_generation(simplex: SortedSimplex, vertices: VertexTable) -> GenerationBisection:
    """
    Generation based bisection of a sorted d-simplex.

    The bisection vertex is the youngest vertex of both children, so each
    child is ``(b,)`` followed by the parent's vertices minus one endpoint of
    the bisection edge, and stays sorted.

    Args:
        simplex: Simplex sorted by decreasing generation
        vertices: Vertex table receiving the midpoint

    Returns:
        Both children, the bisection edge and the bisection vertex
    """
    ids = simplex.vertex_ids
    gens = simplex.vertex_generations
    d = len(ids) - 1
    i, j = bisection_edge_positions(gens, d)
    gen = simplex.generation + 1
    b = vertices.midpoint_vertex(ids[i], ids[j], gen)
    child1 = SortedSimplex((b,) + ids[:i] + ids[i + 1 :], (gen,) + gens[:i] + gens[i + 1 :])
    child2 = SortedSimplex((b,) + ids[:j] + ids[j + 1 :], (gen,) + gens[:j] + gens[j + 1 :])
    return GenerationBisection(child1, child2, Edge(ids[i], ids[j]), b)


def subsimplex_bisection_positions(vertex_generations: Sequence[int], d: int) -> Tuple[int, int, int]:
    """Positions ``(i, m)`` of the bisection edge of an m-subsimplex and gen(b)."""
    gens = vertex_generations
    m = len(gens) - 1
    if m < 1:
        raise ValueError("A subsimplex needs at least two vertices")
    level_m = level_of(gens[m], d)
    if level_of(gens[m - 1], d) != level_m:
        return m - 1, m, gens[m - 1] + d
    youngest_tail = next(i for i, g in enumerate(gens) if level_of(g, d) == level_m)
    return youngest_tail, m, gens[m] + 2 * d + 1 - type_of(gens[youngest_tail], d)


def subsimplex_bisection(simplex: SortedSimplex, d: int) -> Tuple[Edge, int]:
    """
    Bisection edge and bisection vertex generation of an m-subsimplex.

    Args:
        simplex: Sorted m-simplex, 1 <= m <= d
        d: Ambient dimension

    Returns:
        (bisection edge, generation of its midpoint)
    """
    i, m, gen = subsimplex_bisection_positions(simplex.vertex_generations, d)
    return Edge(simplex.vertex_ids[i], simplex.vertex_ids[m]), gen


def gensharp(simplex: Union[SortedSimplex, Sequence[int]], d: int) -> int:
    """
    Sharp generation: generation of the vertex the subsimplex will produce.

    Accepts either a SortedSimplex or its vertex generations.
    """
    gens = simplex.vertex_generations if isinstance(simplex, SortedSimplex) else simplex
    return subsimplex_bisection_positions(gens, d)[2]


def levelsharp(simplex: Union[SortedSimplex, Sequence[int]], d: int) -> int:
    return level_of(gensharp(simplex, d), d)


def typesharp(simplex: Union[SortedSimplex, Sequence[int]], d: int) -> int:
    return type_of(gensharp(simplex, d), d)


def maubach_structure_case(
    vertex_generations: Sequence[int], generation: int, d: int
) -> Optional[str]:
    """
    Classify the vertex generations of a simplex in Maubach order.

    Returns "a" (k = d), "b" (k < d with a level jump after v0) or "c"
    (k < d, v0 and v1 on one level) when the generations follow the
    corresponding block pattern, and None otherwise.
    """
    g = list(vertex_generations)
    k = maubach_k(generation, d)
    base = level_of(generation, d) * d + 1
    levels = [level_of(x, d) for x in g]

    if k == d:
        ok = levels[0] < levels[1] and all(levels[j] == levels[1] for j in range(1, d + 1))
        ok = ok and all(g[j] == base - j for j in range(1, d + 1))
        return "a" if ok else None

    tail_ok = all(g[j] == base - j for j in range(k + 1, d + 1))
    if levels[0] < levels[1]:
        head_ok = all(g[j] == base - d - j for j in range(1, k + 1))
        return "b" if head_ok and tail_ok else None
    if levels[0] == levels[1]:
        head_ok = all(g[j] == g[0] - j for j in range(k + 1))
        jump_ok = g[k + 1] == g[k] + 2 * d - type_of(g[0], d)
        return "c" if head_ok and jump_ok and tail_ok else None
    return None
