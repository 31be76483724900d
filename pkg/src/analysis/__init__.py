"""Distances, mesh size function, grading and level-estimate checks."""

from .adjacency import EDGE, INFINITY, VERTEX, AdjacencyGraph, max_plus_propagate, simplex_distance
from .constants import SeedConstants, c_of_seed, jump_table
from .estimates import EstimateResult, edge_chain_estimate, verify_level_estimate
from .lemmas import LemmaReport, LemmaViolation, scan_lemmas
from .macro import (
    JumpStats,
    MacroClassification,
    classify_vertices,
    gensharp_gap_stats,
    level_jump_stats,
    macro_dimension,
)
from .meshsize import (
    DepthSweep,
    GradingReport,
    brute_force_mesh_size,
    depth_sweep,
    mesh_size_exponents,
    regularized_mesh_size,
)

__all__ = [
    "EDGE",
    "INFINITY",
    "VERTEX",
    "AdjacencyGraph",
    "max_plus_propagate",
    "simplex_distance",
    "SeedConstants",
    "c_of_seed",
    "jump_table",
    "EstimateResult",
    "edge_chain_estimate",
    "verify_level_estimate",
    "LemmaReport",
    "LemmaViolation",
    "scan_lemmas",
    "JumpStats",
    "MacroClassification",
    "classify_vertices",
    "gensharp_gap_stats",
    "level_jump_stats",
    "macro_dimension",
    "DepthSweep",
    "GradingReport",
    "brute_force_mesh_size",
    "depth_sweep",
    "mesh_size_exponents",
    "regularized_mesh_size",
]
