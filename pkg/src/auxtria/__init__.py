"""Auxiliary triangulations around a vertex, their layers, pre-diamonds and chains."""

from .builder import (
    BOUNDARY_LAYER,
    AuxTriangulation,
    build_aux,
    minimal_patch_level,
    neighborhood,
    on_domain_boundary,
    pick_interior_vertex,
)
from .chains import (
    BOUND,
    MESH,
    NeighborhoodScan,
    check_bisection_edge_layers,
    check_finer_triangulation,
    check_leaving_neighborhood,
    check_staying_in_neighborhood,
    sharp_chain,
)
from .diamonds import DiagonalChain, find_pre_diamonds, type_one_diagonal_chains, type_one_diagonals
from .layers import LayerDecomposition, decompose_layers

__all__ = [
    "BOUNDARY_LAYER",
    "AuxTriangulation",
    "build_aux",
    "minimal_patch_level",
    "neighborhood",
    "on_domain_boundary",
    "pick_interior_vertex",
    "BOUND",
    "MESH",
    "NeighborhoodScan",
    "check_bisection_edge_layers",
    "check_finer_triangulation",
    "check_leaving_neighborhood",
    "check_staying_in_neighborhood",
    "sharp_chain",
    "DiagonalChain",
    "find_pre_diamonds",
    "type_one_diagonal_chains",
    "type_one_diagonals",
    "LayerDecomposition",
    "decompose_layers",
]
