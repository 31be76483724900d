"""Bisection rules for single simplices and the sharp-generation calculus."""

from .lockstep import LockstepRun, LockstepStats
from .rules import (
    GenerationBisection,
    MaubachBisection,
    TraxlerBisection,
    bisect_generation,
    bisect_maubach,
    bisect_traxler,
    bisection_edge_positions,
    gensharp,
    levelsharp,
    maubach_structure_case,
    subsimplex_bisection,
    subsimplex_bisection_positions,
    typesharp,
)
from .simplex import (
    Edge,
    MaubachSimplex,
    SortedSimplex,
    TraxlerSimplex,
    head_tail_split,
    maubach_order_from_colors,
    sort_by_generation,
)

__all__ = [
    "LockstepRun",
    "LockstepStats",
    "GenerationBisection",
    "MaubachBisection",
    "TraxlerBisection",
    "bisect_generation",
    "bisect_maubach",
    "bisect_traxler",
    "bisection_edge_positions",
    "gensharp",
    "levelsharp",
    "maubach_structure_case",
    "subsimplex_bisection",
    "subsimplex_bisection_positions",
    "typesharp",
    "Edge",
    "MaubachSimplex",
    "SortedSimplex",
    "TraxlerSimplex",
    "head_tail_split",
    "maubach_order_from_colors",
    "sort_by_generation",
]
