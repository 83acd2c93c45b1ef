"""Benchmark scenario definition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from src.domain.boundary import BoundaryCondition
from src.domain.grid import BottomFunction
from src.domain.scheme import Scheme

# Vectorized initial condition: cell centers -> (h, q)
InitialCondition = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
# Vectorized analytic free surface: (cell centers, time) -> eta
SurfaceReference = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class Scenario:
    """An executable benchmark: domain, bottom, initial/boundary data and defaults."""

    name: str
    title: str
    x_left: float
    x_right: float
    bottom: BottomFunction
    initial_condition: InitialCondition
    boundary: BoundaryCondition
    t_end: float
    n_cells: int
    cfl: float
    default_scheme: Scheme = Scheme.QTRA2
    manning_M: Optional[float] = None  # None: the scenario has no friction
    dry_eps: Optional[float] = None  # None: use the run configuration default
    wet_dry: bool = False
    snapshot_times: Tuple[float, ...] = ()
    analytic_surface: Optional[SurfaceReference] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def has_friction(self) -> bool:
        return self.manning_M is not None

    @property
    def has_reference(self) -> bool:
        return self.analytic_surface is not None
