"""Exact dyadic points."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np


def _canonical(numerators: Tuple[int, ...], exponent: int) -> Tuple[Tuple[int, ...], int]:
    """Reduce numerators / 2^exponent until some numerator is odd or exponent is 0."""
    if exponent == 0:
        return numerators, 0
    bits = 0
    for n in numerators:
        bits |= n
    if bits == 0:
        return tuple(0 for _ in numerators), 0
    trailing = (bits & -bits).bit_length() - 1
    shift = min(trailing, exponent)
    if shift == 0:
        return numerators, exponent
    return tuple(n >> shift for n in numerators), exponent - shift


@dataclass(frozen=True)
class DyadicPoint:
    """
    Point with coordinates ``numerators[i] / 2**exponent``.

    Instances are always stored in canonical form, so equality and hashing
    are plain tuple comparisons.
    """

    numerators: Tuple[int, ...]
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError(f"Exponent must be non-negative, got {self.exponent}")
        nums = tuple(self.numerators)
        for n in nums:
            if isinstance(n, bool) or not isinstance(n, int):
                raise ValueError(f"Numerators must be integers, got {n!r}")
        nums, exponent = _canonical(nums, self.exponent)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "exponent", exponent)

    @property
    def dim(self) -> int:
        """Number of coordinates."""
        return len(self.numerators)

    @classmethod
    def from_ints(cls, coords: Iterable[int]) -> "DyadicPoint":
        """Create an integer point."""
        return cls(tuple(coords), 0)

    @classmethod
    def from_fractions(cls, coords: Iterable) -> "DyadicPoint":
        """
        Create a point from rationals with power-of-two denominators.

        Raises:
            ValueError: If a coordinate is not dyadic
        """
        values = [Fraction(c) for c in coords]
        exponent = 0
        for value in values:
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"Coordinate {value} is not dyadic")
            exponent = max(exponent, den.bit_length() - 1)
        scale = 1 << exponent
        return cls(tuple(int(v * scale) for v in values), exponent)

    def scaled_numerators(self, exponent: int) -> Tuple[int, ...]:
        """Numerators expressed over 2^exponent (exponent >= self.exponent)."""
        shift = exponent - self.exponent
        if shift < 0:
            raise ValueError("Cannot express a point over a coarser denominator")
        return tuple(n << shift for n in self.numerators)

    def to_fractions(self) -> Tuple[Fraction, ...]:
        """Exact coordinates."""
        den = 1 << self.exponent
        return tuple(Fraction(n, den) for n in self.numerators)

    def to_floats(self) -> np.ndarray:
        """Rounded coordinates (lossy for deep refinements)."""
        den = 1 << self.exponent
        return np.array([n / den for n in self.numerators], dtype=float)

    def is_on_lattice(self, exponent: int) -> bool:
        """True if all coordinates are multiples of 2^-exponent."""
        return self.exponent <= exponent

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.to_fractions()) + ")"


def midpoint(a: DyadicPoint, b: DyadicPoint) -> DyadicPoint:
    """
    Exact midpoint of two points.

    Args:
        a: First point
        b: Second point of the same dimension

    Returns:
        (a + b) / 2 in canonical form
    """
    if a.dim != b.dim:
        raise ValueError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    exponent = max(a.exponent, b.exponent)
    na = a.scaled_numerators(exponent)
    nb = b.scaled_numerators(exponent)
    return DyadicPoint(tuple(x + y for x, y in zip(na, nb)), exponent + 1)


def common_numerators(points: Sequence[DyadicPoint]) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    """Express several points over one shared denominator 2^k."""
    exponent = max(p.exponent for p in points)
    return exponent, tuple(p.scaled_numerators(exponent) for p in points)
