"""Pre-diamonds and the type-one diagonals of a vertex patch."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core.arith import type_of
from ..core.exceptions import InvariantViolation
from ..forest.triangulation import Triangulation
from ..utils import get_logger
from .builder import AuxTriangulation
from .layers import LayerDecomposition, decompose_layers

logger = get_logger(__name__)

Edge = Tuple[int, int]


def find_pre_diamonds(tria: Triangulation, aux: Optional[AuxTriangulation] = None) -> List[Edge]:
    """
    Edges that are the bisection edge of every leaf containing them.

    With ``aux`` the triangulation is taken as a view of the refined patch
    and edges with both endpoints on the patch boundary are skipped, since
    part of their edge patch lies outside.
    """
    forest = tria.forest
    found = []
    for key, owners in sorted(tria.edges().items()):
        if aux is not None and aux.on_boundary(key[0]) and aux.on_boundary(key[1]):
            continue
        target = set(key)
        if all(set(forest.bse[t]) == target for t in owners):
            found.append(key)
    return found


@dataclass
class DiagonalChain:
    """Edges of the refined patch covering a type-one diagonal, ordered from the base vertex."""

    diagonal: Edge
    edges: List[Edge] = field(default_factory=list)
    levels: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"diagonal": list(self.diagonal), "edges": [list(e) for e in self.edges], "levels": self.levels}


def type_one_diagonals(aux: AuxTriangulation) -> List[Edge]:
    """Edges (v, w) of the unrefined patch with edge type one."""
    forest = aux.forest
    gen = forest.vertices.generation
    found = set()
    for p in aux.patch:
        for w in forest.node_vertices[p]:
            if w != aux.vertex and type_of(max(gen(aux.vertex), gen(w)), aux.d) == 1:
                found.add((aux.vertex, w))
    return sorted(found)


def _segment_parameter(v: Tuple[Fraction, ...], w: Tuple[Fraction, ...], x: Tuple[Fraction, ...]) -> Optional[Fraction]:
    """t with x = v + t (w - v) and 0 <= t <= 1, or None."""
    t = None
    for vi, wi, xi in zip(v, w, x):
        delta = wi - vi
        if delta == 0:
            if xi != vi:
                return None
            continue
        ti = (xi - vi) / delta
        if t is None:
            t = ti
        elif ti != t:
            return None
    if t is None or t < 0 or t > 1:
        return None
    return t


def _final_edge(decomposition: LayerDecomposition, owners: List[int]) -> bool:
    return all(decomposition.leaf_layer[t] <= decomposition.complete for t in owners)


def type_one_diagonal_chains(
    aux: AuxTriangulation, decomposition: Optional[LayerDecomposition] = None
) -> List[DiagonalChain]:
    """
    Cover every type-one diagonal by the edges of the refined patch.

    Only edges whose edge patch lies in the complete layers take part. Along
    each diagonal they must start at the base vertex, touch one another,
    have levels m+1, m+2, ... and be pre-diamonds. Conversely, every such
    final edge that is a pre-diamond must lie on a type-one diagonal.

    Raises:
        InvariantViolation: If a chain breaks or a pre-diamond lies off the diagonals
    """
    if decomposition is None:
        decomposition = decompose_layers(aux)
    forest = aux.forest
    tria = aux.patch_triangulation()
    edges = tria.edges()
    final = {key: owners for key, owners in edges.items() if _final_edge(decomposition, owners)}
    pre_diamonds = set(key for key in find_pre_diamonds(tria, aux) if key in final)
    points = {w: forest.vertices.point(w).to_fractions() for w in tria.vertex_ids()}
    base = points[aux.vertex]

    chains = []
    on_diagonal = set()
    for diagonal in type_one_diagonals(aux):
        far = forest.vertices.point(diagonal[1]).to_fractions()
        params = {w: _segment_parameter(base, far, x) for w, x in points.items()}
        covering = []
        for key in final:
            ta, tb = params[key[0]], params[key[1]]
            if ta is not None and tb is not None:
                covering.append((min(ta, tb), key))
        covering.sort()
        chain = DiagonalChain(diagonal)
        for _, key in covering:
            chain.edges.append(key)
            chain.levels.append(forest.vertex_level(max(key, key=forest.vertices.generation)))
            on_diagonal.add(key)

        if chain.edges and aux.vertex not in chain.edges[0]:
            raise InvariantViolation(
                "aux-diagonal-chain", f"Diagonal {diagonal}: first edge {chain.edges[0]} misses the base vertex"
            )
        for k, key in enumerate(chain.edges):
            if chain.levels[k] != aux.m + k + 1:
                raise InvariantViolation(
                    "aux-diagonal-chain",
                    f"Diagonal {diagonal}: edge {key} has level {chain.levels[k]}, expected {aux.m + k + 1}",
                    witness=key,
                )
            if k and not set(key) & set(chain.edges[k - 1]):
                raise InvariantViolation(
                    "aux-diagonal-chain", f"Diagonal {diagonal}: edges {chain.edges[k - 1]} and {key} are apart"
                )
            if key not in pre_diamonds:
                raise InvariantViolation(
                    "aux-diagonal-chain", f"Diagonal {diagonal}: edge {key} is not a pre-diamond", witness=key
                )
        chains.append(chain)

    stray = sorted(pre_diamonds - on_diagonal)
    if stray:
        raise InvariantViolation(
            "aux-pre-diamond", f"Pre-diamond {stray[0]} does not lie on a type-one diagonal", witness=stray[0]
        )
    logger.info(f"{len(chains)} type-one diagonals at v={aux.vertex}, {len(pre_diamonds)} final pre-diamonds")
    return chains
