"""Initial triangulations and matching-neighbor onboarding."""

from .onboarding import MATCHING_NEIGHBOR_MESSAGE, onboard_matching_neighbor
from .seed import (
    ColoringViolation,
    SeedTriangulation,
    assign_initial_generations,
    kuhn_cube,
    single_kuhn_simplex,
    square_seed,
    validate_coloring,
    validate_seed,
)

__all__ = [
    "MATCHING_NEIGHBOR_MESSAGE",
    "onboard_matching_neighbor",
    "ColoringViolation",
    "SeedTriangulation",
    "assign_initial_generations",
    "kuhn_cube",
    "single_kuhn_simplex",
    "square_seed",
    "validate_coloring",
    "validate_seed",
]
