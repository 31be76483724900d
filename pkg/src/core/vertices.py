"""Deduplicating vertex store."""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .dyadic import DyadicPoint, midpoint
from .exceptions import InvariantViolation


@dataclass(frozen=True)
class Vertex:
    """Read-only view of one stored vertex; its macro dimension is Forest.macro_dimension."""

    id: int
    point: DyadicPoint
    generation: int


class VertexTable:
    """
    Dense vertex arena with a point -> id map.

    Generations are immutable: adding a known point again must repeat its
    generation, otherwise an InvariantViolation is raised. Midpoints of
    vertex pairs are cached so repeated bisections of the same edge are a
    dictionary lookup.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.points: List[DyadicPoint] = []
        self.generations: List[int] = []
        self._index: Dict[DyadicPoint, int] = {}
        self._midpoints: Dict[Tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vertex]:
        for vid in range(len(self.points)):
            yield self.vertex(vid)

    def add(self, point: DyadicPoint, generation: int) -> int:
        """
        Insert a point or return the id of an identical stored point.

        Raises:
            InvariantViolation: If the point exists with another generation
        """
        if point.dim != self.dim:
            raise ValueError(f"Point {point} has dimension {point.dim}, expected {self.dim}")
        vid = self._index.get(point)
        if vid is not None:
            if self.generations[vid] != generation:
                raise InvariantViolation(
                    "vertex-generation",
                    f"Vertex {point} already has generation {self.generations[vid]}, "
                    f"cannot assign {generation}",
                    witness=vid,
                )
            return vid
        vid = len(self.points)
        self.points.append(point)
        self.generations.append(generation)
        self._index[point] = vid
        return vid

    def midpoint_vertex(self, a: int, b: int, generation: int) -> int:
        """Id of the midpoint of vertices a and b, creating it if needed."""
        key = (a, b) if a < b else (b, a)
        vid = self._midpoints.get(key)
        if vid is None:
            vid = self.add(midpoint(self.points[a], self.points[b]), generation)
            self._midpoints[key] = vid
        elif self.generations[vid] != generation:
            raise InvariantViolation(
                "vertex-generation",
                f"Midpoint of edge ({a}, {b}) has generation {self.generations[vid]}, "
                f"bisection requested {generation}",
                witness=vid,
            )
        return vid

    def find(self, point: DyadicPoint) -> Optional[int]:
        """Id of a stored point, or None."""
        return self._index.get(point)

    def find_midpoint(self, a: int, b: int) -> Optional[int]:
        """Id of the midpoint of a and b if that point is stored."""
        key = (a, b) if a < b else (b, a)
        vid = self._midpoints.get(key)
        if vid is None:
            vid = self._index.get(midpoint(self.points[a], self.points[b]))
            if vid is not None:
                self._midpoints[key] = vid
        return vid

    def generation(self, vid: int) -> int:
        return self.generations[vid]

    def point(self, vid: int) -> DyadicPoint:
        return self.points[vid]

    def vertex(self, vid: int) -> Vertex:
        return Vertex(vid, self.points[vid], self.generations[vid])
