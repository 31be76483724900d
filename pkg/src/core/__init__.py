"""Exact dyadic geometry and generation arithmetic."""

from .arith import generation_of, level_of, maubach_k, traxler_gamma, type_of
from .dyadic import DyadicPoint, midpoint
from .exceptions import (
    BisectionError,
    ClosureBudgetExceeded,
    DegenerateSimplexError,
    ForestMismatchError,
    InsufficientDepthError,
    InvariantViolation,
    MeshFormatError,
    NotALeafError,
    SeedError,
)
from .geometry import (
    barycentric_coordinates,
    in_closed_simplex,
    normm,
    simplex_diameter,
    simplex_volume,
)
from .vertices import Vertex, VertexTable

__all__ = [
    "generation_of",
    "level_of",
    "maubach_k",
    "traxler_gamma",
    "type_of",
    "DyadicPoint",
    "midpoint",
    "BisectionError",
    "ClosureBudgetExceeded",
    "DegenerateSimplexError",
    "ForestMismatchError",
    "InsufficientDepthError",
    "InvariantViolation",
    "MeshFormatError",
    "NotALeafError",
    "SeedError",
    "barycentric_coordinates",
    "in_closed_simplex",
    "normm",
    "simplex_diameter",
    "simplex_volume",
    "Vertex",
    "VertexTable",
]
