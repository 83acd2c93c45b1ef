"""Ghost-cell filling for the boundary conditions."""

from __future__ import annotations

from typing import NamedTuple, Tuple

from src.domain.boundary import (
    BoundaryCondition,
    BoundarySpec,
    PrescribedDepth,
    PrescribedDischarge,
    Transmissive,
    Wall,
)
from src.domain.errors import BoundaryConsistencyError, ConfigurationError
from src.domain.grid import Field, State


class GhostCells(NamedTuple):
    """One ghost state and ghost bottom value on each side of the domain."""

    ghost_left: State
    ghost_right: State
    ghost_b_left: float
    ghost_b_right: float


def _ghost(spec: BoundarySpec, adjacent: State, b_adjacent: float, t: float, side: str) -> Tuple[State, float]:
    # Every variant mirrors (equivalently copies) the adjacent bottom.
    if isinstance(spec, Wall):
        return adjacent.mirrored(), b_adjacent

    if isinstance(spec, Transmissive):
        return adjacent, b_adjacent

    if isinstance(spec, PrescribedDepth):
        level = float(spec.level(t))
        depth = level - b_adjacent
        if depth < 0.0:
            raise BoundaryConsistencyError(
                f"Prescribed level {level:.6g} m on the {side} is below the "
                f"boundary bottom {b_adjacent:.6g} m at t={t:.6g} s"
            )
        return State(h=depth, q=adjacent.q), b_adjacent

    if isinstance(spec, PrescribedDischarge):
        if spec.is_active(t):
            return State(h=adjacent.h, q=float(spec.discharge(t))), b_adjacent
        return adjacent.mirrored(), b_adjacent

    raise ConfigurationError(f"Unknown boundary specification: {spec!r}")


def fill_ghosts(field: Field, bc: BoundaryCondition, t: float) -> GhostCells:
    """Ghost states and bottoms for both ends at time ``t``.

    Raises:
        BoundaryConsistencyError: a prescribed level below the ghost bottom
    """
    b = field.bathymetry.b
    last = field.n_cells - 1
    left, b_left = _ghost(bc.left, field.state(0), float(b[0]), t, "left")
    right, b_right = _ghost(bc.right, field.state(last), float(b[last]), t, "right")
    return GhostCells(left, right, b_left, b_right)
