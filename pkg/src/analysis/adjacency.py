"""Leaf adjacency graphs and simplex distances."""

import math
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from ..forest.triangulation import Triangulation

INFINITY = math.inf

VERTEX = "vertex"
EDGE = "edge"


def incidence_matrix(rows: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> sp.csr_matrix:
    """Sparse 0/1 matrix with one row per entry of ``rows``."""
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    indices = np.fromiter((v for r in rows for v in r), dtype=np.int64, count=int(indptr[-1]))
    if n_cols is None:
        n_cols = int(indices.max()) + 1 if indices.size else 0
    data = np.ones(indices.size, dtype=np.int32)
    return sp.csr_matrix((data, indices, indptr), shape=(len(rows), n_cols))


class AdjacencyGraph:
    """
    Leaves of a triangulation as graph nodes.

    ``kind="vertex"`` links leaves sharing at least one vertex (intersecting
    simplices); ``kind="edge"`` links leaves sharing an edge (1-neighbors).
    Rows are the leaves in increasing id order.
    """

    def __init__(self, tria: Triangulation, kind: str = VERTEX, leaves: Optional[Sequence[int]] = None):
        if kind not in (VERTEX, EDGE):
            raise ValueError(f"kind must be '{VERTEX}' or '{EDGE}', got {kind!r}")
        self.tria = tria
        self.kind = kind
        self.leaf_ids = np.asarray(sorted(leaves) if leaves is not None else tria.leaf_ids, dtype=np.int64)
        self.row: Dict[int, int] = {int(t): i for i, t in enumerate(self.leaf_ids)}

        verts = tria.forest.node_vertices
        incidence = incidence_matrix([verts[t] for t in self.leaf_ids], len(tria.forest.vertices))
        shared = (incidence @ incidence.T).tocsr()
        shared.setdiag(0)
        shared.eliminate_zeros()
        threshold = 1 if kind == VERTEX else 2
        shared.data = (shared.data >= threshold).astype(np.int8)
        shared.eliminate_zeros()
        self.matrix: sp.csr_matrix = shared

    def __len__(self) -> int:
        return int(self.leaf_ids.size)

    def neighbors(self, leaf: int) -> List[int]:
        i = self.row[leaf]
        m = self.matrix
        return [int(self.leaf_ids[j]) for j in m.indices[m.indptr[i] : m.indptr[i + 1]]]

    def pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        """Row indices (i, j) of all adjacent pairs, each orientation once."""
        coo = self.matrix.tocoo()
        return coo.row, coo.col

    def bfs(self, sources: Union[int, Sequence[int]]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Breadth-first search from one or more leaves.

        Returns:
            (distance per row, -1 when unreachable; BFS parent row, -1 for sources)
        """
        if isinstance(sources, (int, np.integer)):
            sources = [int(sources)]
        n = len(self)
        dist = np.full(n, -1, dtype=np.int64)
        parent = np.full(n, -1, dtype=np.int64)
        indptr, indices = self.matrix.indptr, self.matrix.indices
        queue = deque()
        for s in sources:
            r = self.row[int(s)]
            if dist[r] < 0:
                dist[r] = 0
                queue.append(r)
        while queue:
            u = queue.popleft()
            for w in indices[indptr[u] : indptr[u + 1]]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        return dist, parent

    def all_pairs(self) -> np.ndarray:
        """Dense all-pairs distance matrix (inf when disconnected). Small graphs only."""
        return shortest_path(self.matrix, unweighted=True, directed=False)

    def distances_from(self, rows: Sequence[int]) -> np.ndarray:
        return shortest_path(self.matrix, unweighted=True, directed=False, indices=list(rows))


def simplex_distance(tria: Triangulation, t1: int, t2: int, graph: Optional[AdjacencyGraph] = None):
    """
    Length of the shortest chain of intersecting leaves from t1 to t2, minus one.

    Returns:
        Non-negative integer, or INFINITY if the leaves are not connected
    """
    if t1 == t2:
        return 0
    if graph is None:
        graph = AdjacencyGraph(tria, VERTEX)
    dist, _ = graph.bfs(t1)
    d = int(dist[graph.row[t2]])
    return INFINITY if d < 0 else d


def max_plus_propagate(
    matrix: sp.csr_matrix, initial: np.ndarray, step: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Compute ``s(u) = max_w (initial(w) - step * dist(u, w))`` on a graph.

    A Dial-style bucket queue over integer potentials, processed from the
    largest value down. Each node is settled once.

    Args:
        matrix: Symmetric sparse adjacency (CSR)
        initial: Integer start value per node
        step: Decrease per graph step

    Returns:
        (potential per node, row of a maximizing source per node)
    """
    n = initial.size
    pot = initial.astype(np.int64).copy()
    origin = np.arange(n, dtype=np.int64)
    if n == 0:
        return pot, origin
    indptr, indices = matrix.indptr, matrix.indices
    buckets: Dict[int, List[int]] = {}
    for u in range(n):
        buckets.setdefault(int(pot[u]), []).append(u)
    settled = np.zeros(n, dtype=bool)
    keys = sorted(buckets, reverse=True)
    lowest = keys[-1]
    value = keys[0]
    while value >= lowest - step:
        bucket = buckets.pop(value, None)
        if bucket:
            for u in bucket:
                if settled[u] or pot[u] != value:
                    continue
                settled[u] = True
                cand = value - step
                for w in indices[indptr[u] : indptr[u + 1]]:
                    if not settled[w] and pot[w] < cand:
                        pot[w] = cand
                        origin[w] = origin[u]
                        buckets.setdefault(cand, []).append(int(w))
        if not buckets:
            break
        value -= 1
    return pot, origin
