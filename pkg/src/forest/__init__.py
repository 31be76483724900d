"""Master forest, conforming triangulations, closure and lattice operations."""

from .closure import (
    DEFAULT_CLOSURE_BUDGET,
    Refiner,
    bisect_unclosed,
    bisect_with_closure,
    random_refinement,
    refine_marked,
    refine_to_size,
    uniform_refine,
)
from .conformity import ConformityViolation, is_conforming
from .forest import Forest, SimplexNode, new_forest
from .triangulation import Triangulation, is_refinement, join, leaves_of_mask, meet

__all__ = [
    "DEFAULT_CLOSURE_BUDGET",
    "Refiner",
    "bisect_unclosed",
    "bisect_with_closure",
    "random_refinement",
    "refine_marked",
    "refine_to_size",
    "uniform_refine",
    "ConformityViolation",
    "is_conforming",
    "Forest",
    "SimplexNode",
    "new_forest",
    "Triangulation",
    "is_refinement",
    "join",
    "leaves_of_mask",
    "meet",
]
