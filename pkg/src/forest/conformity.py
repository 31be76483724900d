"""Exact conformity checker."""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..utils import get_logger
from .triangulation import Triangulation

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConformityViolation:
    """First witness of a nonconforming pair or facet."""

    kind: str
    simplices: Tuple[int, ...]
    vertices: Tuple[int, ...]
    detail: str


def is_conforming(tria: Triangulation) -> Tuple[bool, Optional[ConformityViolation]]:
    """
    Check that any two leaves meet in a common subsimplex or not at all.

    Two exact tests, leaf by leaf in id order:

    * hanging vertex: the midpoint of a leaf edge is a vertex of another leaf;
    * facet matching: every leaf facet is shared by exactly one other leaf
      or lies on the domain boundary.

    Returns:
        (True, None) or (False, first violation)
    """
    forest = tria.forest
    verts = forest.node_vertices
    star = tria.vertex_star()
    table = forest.vertices

    for nid in tria.leaf_ids:
        nid = int(nid)
        for a, b in combinations(verts[nid], 2):
            mid = table.find_midpoint(a, b)
            if mid is not None and mid in star:
                other = star[mid][0]
                return False, ConformityViolation(
                    kind="hanging-vertex",
                    simplices=(nid, other),
                    vertices=(a, b, mid),
                    detail=f"Vertex {mid} of simplex {other} is the midpoint of edge ({a}, {b}) of simplex {nid}",
                )

    facets: Dict[frozenset, List[int]] = {}
    for nid in tria.leaf_ids:
        nid = int(nid)
        ids = verts[nid]
        for i in range(len(ids)):
            facets.setdefault(frozenset(ids[:i] + ids[i + 1 :]), []).append(nid)

    for nid in tria.leaf_ids:
        nid = int(nid)
        ids = verts[nid]
        for i in range(len(ids)):
            facet = ids[:i] + ids[i + 1 :]
            owners = facets[frozenset(facet)]
            if len(owners) > 2:
                return False, ConformityViolation(
                    kind="facet-multiplicity",
                    simplices=tuple(owners),
                    vertices=tuple(sorted(facet)),
                    detail=f"Facet {sorted(facet)} is shared by {len(owners)} simplices",
                )
            if len(owners) == 1 and not forest.facet_on_boundary(nid, facet):
                return False, ConformityViolation(
                    kind="unmatched-facet",
                    simplices=(nid,),
                    vertices=tuple(sorted(facet)),
                    detail=f"Interior facet {sorted(facet)} of simplex {nid} has no matching neighbor",
                )
    return True, None
