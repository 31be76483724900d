"""Tests for the layer decomposition of auxiliary triangulations."""


def _aux(depth, d=2, m=2):
    from src.auxtria import build_aux
    from src.core import DyadicPoint
    from src.forest import bisect_with_closure, new_forest
    from src.seed import kuhn_cube

    forest, tria = new_forest(kuhn_cube(d))
    bisect_with_closure(tria, 0)
    center = forest.vertices.find(DyadicPoint((1,) * d, 1))
    return build_aux(forest, center, m, depth)


def test_complete_layers_have_matching_distance_and_level():
    from src.auxtria import decompose_layers

    aux = _aux(6)
    layers = decompose_layers(aux)
    assert layers.complete == 3
    assert layers.outer == 4
    for ell in range(1, 4):
        assert layers.layers[ell]
        for leaf in layers.layers[ell]:
            assert layers.distance[leaf] == ell - 1
            assert aux.forest.level(leaf) == aux.m + ell


def test_first_layer_holds_the_leaves_at_the_vertex():
    from src.auxtria import decompose_layers

    aux = _aux(4)
    layers = decompose_layers(aux)
    at_vertex = [t for t in aux.leaves if aux.vertex in aux.forest.node_vertices[t]]
    assert sorted(at_vertex) == sorted(layers.layers[1])
    assert all(layers.bfs_parent[t] == -1 for t in at_vertex)
    assert layers.interface(0) == [aux.vertex]


def test_vertices_meet_at_most_two_consecutive_layers():
    from src.auxtria import decompose_layers

    aux = _aux(6)
    layers = decompose_layers(aux)
    assert all(hi - lo <= 1 for lo, hi in layers.vertex_layers.values())
    for ell in range(1, layers.complete):
        for w in layers.interface(ell):
            assert aux.forest.vertex_level(w) == aux.m + ell


def test_partial_layer_is_lumped_into_the_outer_index():
    from src.auxtria import decompose_layers

    aux = _aux(5)
    layers = decompose_layers(aux)
    assert layers.complete == 2
    assert set(layers.layers) <= {1, 2, 3}
    assert sum(layers.widths().values()) == len(aux.leaves)
    assert all(layers.leaf_layer[t] == 3 for t in aux.boundary_leaves())


def test_layers_in_three_dimensions():
    from src.auxtria import decompose_layers

    aux = _aux(6, d=3)
    layers = decompose_layers(aux)
    assert layers.complete == 2
    assert all(aux.forest.level(t) == 3 for t in layers.layers[1])


def test_to_dict_reports_widths():
    from src.auxtria import decompose_layers

    aux = _aux(2)
    summary = decompose_layers(aux).to_dict()
    assert summary["complete_layers"] == 1
    assert summary["m"] == 2
    assert summary["depth"] == 2
    assert sum(summary["widths"].values()) == len(aux.leaves)
