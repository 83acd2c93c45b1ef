"""Boundary condition specifications for the two domain ends."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple, Union

TimeFunction = Callable[[float], float]


@dataclass(frozen=True)
class Wall:
    """Reflective vertical wall: zero normal discharge."""


@dataclass(frozen=True)
class Transmissive:
    """Zeroth-order outflow: the ghost copies the adjacent cell."""


@dataclass(frozen=True)
class PrescribedDepth:
    """Free-surface level imposed at the boundary, ``level(t)`` in meters.

    The ghost depth is the level minus the (mirrored) ghost bottom.
    """

    level: TimeFunction


@dataclass(frozen=True)
class PrescribedDischarge:
    """Discharge ``discharge(t)`` (m²/s) imposed during ``active``; a wall otherwise."""

    discharge: TimeFunction
    active: Tuple[float, float] = (0.0, float("inf"))

    def is_active(self, t: float) -> bool:
        start, end = self.active
        return start <= t <= end


BoundarySpec = Union[Wall, Transmissive, PrescribedDepth, PrescribedDischarge]


@dataclass(frozen=True)
class BoundaryCondition:
    """Boundary specifications for the left and right domain ends."""

    left: BoundarySpec
    right: BoundarySpec

    @classmethod
    def walls(cls) -> BoundaryCondition:
        return cls(left=Wall(), right=Wall())

    @property
    def is_closed(self) -> bool:
        """True when no water can cross either end."""
        return isinstance(self.left, Wall) and isinstance(self.right, Wall)
