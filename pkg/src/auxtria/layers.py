"""Layer decomposition of an auxiliary triangulation."""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..core.exceptions import InvariantViolation
from ..analysis.adjacency import VERTEX, AdjacencyGraph
from ..utils import get_logger
from .builder import BOUNDARY_LAYER, AuxTriangulation

logger = get_logger(__name__)


@dataclass
class LayerDecomposition:
    """
    Layers of the refined vertex patch.

    Layers 1..``complete`` are final at the built depth. Every other leaf
    (boundary layer and the partially built layer) is lumped into the outer
    index ``complete + 1`` in ``leaf_layer`` and ``vertex_layers``.
    ``distance`` is the BFS distance of a leaf from the leaves at the base
    vertex, with ``bfs_parent`` pointing one step closer.
    """

    aux: AuxTriangulation
    complete: int
    leaf_layer: Dict[int, int]
    distance: Dict[int, int]
    bfs_parent: Dict[int, int]
    vertex_layers: Dict[int, Tuple[int, int]]
    layers: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def outer(self) -> int:
        return self.complete + 1

    def interface(self, ell: int) -> List[int]:
        """Vertices shared by layer ``ell`` and layer ``ell + 1`` (the base vertex for ``ell = 0``)."""
        if ell == 0:
            return [self.aux.vertex]
        return sorted(w for w, (lo, hi) in self.vertex_layers.items() if lo == ell and hi == ell + 1)

    def widths(self) -> Dict[int, int]:
        return {ell: len(leaves) for ell, leaves in sorted(self.layers.items())}

    def to_dict(self) -> Dict:
        return {
            "vertex": self.aux.vertex,
            "m": self.aux.m,
            "depth": self.aux.depth,
            "complete_layers": self.complete,
            "widths": {str(k): v for k, v in self.widths().items()},
        }


def _effective(aux: AuxTriangulation, leaf: int, complete: int) -> int:
    ell = aux.layer[leaf]
    return ell if ell != BOUNDARY_LAYER and ell <= complete else complete + 1


def decompose_layers(aux: AuxTriangulation) -> LayerDecomposition:
    """
    Derive the layers by BFS from the leaves at the base vertex and compare
    them with the layer indices recorded while building.

    A leaf of a complete layer l is at BFS distance l - 1 and has level
    m + l. Each vertex meets at most two consecutive layers, and a vertex
    off the patch boundary on the interface of layers l and l + 1 has
    level m + l.

    Raises:
        InvariantViolation: On any disagreement
    """
    forest = aux.forest
    m = aux.m
    complete = aux.complete_layers
    tria = aux.patch_triangulation()
    graph = AdjacencyGraph(tria, VERTEX)

    sources = [t for t in aux.leaves if aux.vertex in forest.node_vertices[t]]
    dist, parent = graph.bfs(sources)

    leaf_layer: Dict[int, int] = {}
    distance: Dict[int, int] = {}
    bfs_parent: Dict[int, int] = {}
    layers: Dict[int, List[int]] = {}
    for row, leaf in enumerate(graph.leaf_ids):
        leaf = int(leaf)
        ell = _effective(aux, leaf, complete)
        leaf_layer[leaf] = ell
        distance[leaf] = int(dist[row])
        bfs_parent[leaf] = int(graph.leaf_ids[parent[row]]) if parent[row] >= 0 else -1
        layers.setdefault(ell, []).append(leaf)

        if ell <= complete:
            if distance[leaf] + 1 != ell:
                raise InvariantViolation(
                    "aux-layer-distance",
                    f"Leaf {leaf} in layer {ell} is at distance {distance[leaf]} from vertex {aux.vertex}",
                    witness=leaf,
                )
            if forest.level(leaf) != m + ell:
                raise InvariantViolation(
                    "aux-layer-level",
                    f"Leaf {leaf} in layer {ell} has level {forest.level(leaf)}, expected {m + ell}",
                    witness=leaf,
                )
        elif distance[leaf] < complete:
            raise InvariantViolation(
                "aux-layer-distance",
                f"Leaf {leaf} beyond the complete layers is at distance {distance[leaf]}",
                witness=leaf,
            )

    vertex_layers: Dict[int, Tuple[int, int]] = {}
    for leaf, ell in leaf_layer.items():
        for w in forest.node_vertices[leaf]:
            lo, hi = vertex_layers.get(w, (ell, ell))
            vertex_layers[w] = (min(lo, ell), max(hi, ell))

    for w, (lo, hi) in vertex_layers.items():
        if hi - lo > 1:
            raise InvariantViolation(
                "aux-layer-separation", f"Vertex {w} meets layers {lo} and {hi}", witness=w
            )
        if w == aux.vertex or aux.on_boundary(w) or lo > complete or hi == lo:
            continue
        if forest.vertex_level(w) != m + lo:
            raise InvariantViolation(
                "aux-interface",
                f"Vertex {w} on the interface of layers {lo} and {hi} has level {forest.vertex_level(w)}, "
                f"expected {m + lo}",
                witness=w,
            )

    decomposition = LayerDecomposition(
        aux, complete, leaf_layer, distance, bfs_parent, vertex_layers, dict(sorted(layers.items()))
    )
    logger.info(f"Layer decomposition at v={aux.vertex}: widths {decomposition.widths()}")
    return decomposition
