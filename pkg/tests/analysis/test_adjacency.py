"""Tests for leaf adjacency graphs and simplex distances."""

import numpy as np
import pytest
import scipy.sparse as sp


def _uniform(d=2, steps=2):
    from src.forest import new_forest, uniform_refine
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(d))
    return uniform_refine(tria, steps)


def test_vertex_graph_is_denser_than_edge_graph():
    from src.analysis import EDGE, VERTEX, AdjacencyGraph

    tria = _uniform()
    vertex = AdjacencyGraph(tria, VERTEX)
    edge = AdjacencyGraph(tria, EDGE)
    assert len(vertex) == len(edge) == 8
    assert vertex.matrix.nnz > edge.matrix.nnz
    # every triangle has at least one edge neighbor
    assert all(edge.neighbors(t) for t in tria)
    with pytest.raises(ValueError):
        AdjacencyGraph(tria, "facet")


def test_all_triangles_around_the_center_are_one_apart():
    from src.analysis import AdjacencyGraph, simplex_distance

    tria = _uniform()
    graph = AdjacencyGraph(tria)
    leaves = tria.leaves()
    # every triangle of the gen-2 Kuhn square touches the center
    assert all(simplex_distance(tria, leaves[0], t, graph) <= 1 for t in leaves)
    assert simplex_distance(tria, leaves[0], leaves[0]) == 0


def test_bfs_from_several_sources():
    from src.analysis import AdjacencyGraph

    tria = _uniform(2, 4)
    graph = AdjacencyGraph(tria)
    dist, parent = graph.bfs(tria.leaves()[:2])
    assert (dist >= 0).all()
    assert (dist[:2] == 0).all()
    assert (parent[dist > 0] >= 0).all()
    assert np.array_equal(graph.distances_from([0])[0], graph.all_pairs()[0])


def test_max_plus_propagate_on_a_path():
    from src.analysis import max_plus_propagate

    path = sp.csr_matrix(np.array([[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]]))
    pot, origin = max_plus_propagate(path, np.array([5, 0, 0, 3]), step=1)
    assert pot.tolist() == [5, 4, 3, 3]
    assert origin.tolist() == [0, 0, 0, 3]
    pot, _ = max_plus_propagate(path, np.array([6, 0, 0, 0]), step=2)
    assert pot.tolist() == [6, 4, 2, 0]
