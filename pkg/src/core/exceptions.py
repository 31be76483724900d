"""Exception hierarchy for the refinement engine."""

from typing import Any, Optional


class BisectionError(Exception):
    """Base class for all errors raised by the refinement engine."""


class DegenerateSimplexError(BisectionError, ValueError):
    """Raised when a simplex has zero volume."""


class SeedError(BisectionError, ValueError):
    """Raised when an initial triangulation is not admissible."""


class MeshFormatError(BisectionError, ValueError):
    """Raised when a mesh document cannot be read."""


class ForestMismatchError(BisectionError, ValueError):
    """Raised when triangulations of different forests are combined."""


class NotALeafError(BisectionError, ValueError):
    """Raised when a bisection targets a simplex that is not a leaf."""

    def __init__(self, node_id: int):
        super().__init__(f"Simplex {node_id} is not a leaf of the triangulation")
        self.node_id = node_id


class InsufficientDepthError(BisectionError, ValueError):
    """Raised when an auxiliary triangulation is too shallow for a request."""

    def __init__(self, message: str, required_depth: int):
        super().__init__(f"{message} (requires depth j >= {required_depth})")
        self.required_depth = required_depth


class ClosureBudgetExceeded(BisectionError, RuntimeError):
    """Raised when the conforming closure does not terminate within budget."""

    def __init__(self, budget: int, target: int):
        super().__init__(
            f"Conforming closure for simplex {target} exceeded the budget of "
            f"{budget} bisections. The initial triangulation probably violates "
            "the matching neighbor condition; color it or run onboarding."
        )
        self.budget = budget
        self.target = target


class InvariantViolation(BisectionError, RuntimeError):
    """Raised when a checked mathematical invariant fails."""

    def __init__(self, invariant: str, detail: str, witness: Optional[Any] = None):
        super().__init__(f"[{invariant}] {detail}")
        self.invariant = invariant
        self.detail = detail
        self.witness = witness
