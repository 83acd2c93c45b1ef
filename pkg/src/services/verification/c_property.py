"""Lake-at-rest (C-property) checks and convergence-order fits."""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import RunConfig
from src.domain.boundary import BoundaryCondition
from src.domain.errors import ConfigurationError
from src.domain.grid import Bathymetry, BottomFunction, lake_at_rest, make_grid
from src.domain.report import Classification, CPropertyReport, GridDefect
from src.domain.scenario import Scenario
from src.domain.scheme import Scheme
from src.services.numerics.homogeneous import stable_dt
from src.services.simulation.simulation_service import SimulationService
from src.utils.logging import get_logger

logger = get_logger(__name__)

EXACT_TOLERANCE = 1e-12
MIN_APPROXIMATE_ORDER = 1.8
DEFAULT_GRIDS = (50, 100, 200)
DEFAULT_STEPS = 20


def convergence_order(errors: Sequence[Tuple[float, float]]) -> Optional[float]:
    """Least-squares slope of log(error) against log(dx).

    Returns None when an error is zero or negative (the order is undefined).

    Raises:
        ConfigurationError: fewer than two entries, or dx not strictly decreasing
    """
    if len(errors) < 2:
        raise ConfigurationError(f"A convergence order needs at least two grids, got {len(errors)}")
    dx = np.array([e[0] for e in errors], dtype=np.float64)
    err = np.array([e[1] for e in errors], dtype=np.float64)
    if np.any(np.diff(dx) >= 0.0) or np.any(dx <= 0.0):
        raise ConfigurationError(f"Grid spacings must be positive and strictly decreasing: {dx.tolist()}")
    if np.any(err <= 0.0):
        return None
    slope, _ = np.polyfit(np.log(dx), np.log(err), 1)
    return float(slope)


def _component_order(dx: List[float], values: List[float]) -> Optional[float]:
    """Fitted order of one defect component; inf when it already vanishes on some grids."""
    below = [v <= EXACT_TOLERANCE for v in values]
    if all(below):
        return None
    if any(below):
        return math.inf
    return convergence_order(list(zip(dx, values)))


def classify(per_grid: Sequence[GridDefect]) -> Tuple[Classification, Optional[float]]:
    """Exact when every defect is within 1e-12; otherwise by the smaller fitted order.

    Orders are fitted on the one-step defects. A scheme whose single steps stay
    at rest while the accumulated drift does not is a failure.
    """
    rows = sorted(per_grid, key=lambda r: r.dx, reverse=True)
    step_exact = all(r.max_abs_q <= EXACT_TOLERANCE and r.max_abs_dh <= EXACT_TOLERANCE for r in rows)
    if step_exact and all(r.drift_abs_q <= EXACT_TOLERANCE and r.drift_abs_dh <= EXACT_TOLERANCE for r in rows):
        return Classification.EXACT, None
    if step_exact or len(rows) < 2:
        return Classification.FAILS, None

    dx = [r.dx for r in rows]
    orders = [
        order
        for order in (
            _component_order(dx, [r.max_abs_q for r in rows]),
            _component_order(dx, [r.max_abs_dh for r in rows]),
        )
        if order is not None
    ]
    order = min(orders)
    if order >= MIN_APPROXIMATE_ORDER:
        return Classification.APPROXIMATE, None if math.isinf(order) else order
    return Classification.FAILS, order


def _lake_scenario(bottom: BottomFunction, surface_level: float, x_left: float, x_right: float) -> Scenario:
    def initial(x: np.ndarray):
        return np.maximum(surface_level - bottom(x), 0.0), np.zeros_like(x)

    return Scenario(
        name="lake-at-rest",
        title=f"Water at rest at level {surface_level:g} m",
        x_left=x_left,
        x_right=x_right,
        bottom=bottom,
        initial_condition=initial,
        boundary=BoundaryCondition.walls(),
        t_end=0.0,
        n_cells=DEFAULT_GRIDS[0],
        cfl=0.5,
    )


def measure_defect(
    scheme: Scheme,
    bottom: BottomFunction,
    surface_level: float,
    n_cells: int,
    n_steps: int = DEFAULT_STEPS,
    config: Optional[RunConfig] = None,
    x_left: float = 0.0,
    x_right: float = 1.0,
) -> GridDefect:
    """Per-step and accumulated lake-at-rest defects on one grid.

    ``max_abs_q`` and ``max_abs_dh`` are the change made by a single CFL step
    applied to the exact lake state, the quantity whose order in dx decides the
    classification. Over the following steps the bump radiates the residual as
    waves, so the departure after ``n_steps`` (``drift_abs_q``, ``drift_abs_dh``)
    only has to vanish for an exact scheme.

    Raises:
        ConfigurationError: no steps requested, or the surface does not cover
            the bottom everywhere
    """
    if n_steps < 1:
        raise ConfigurationError(f"At least one step is required, got {n_steps}")
    config = (config or RunConfig()).with_overrides(scheme=scheme, wet_dry=False, snapshot_times=())
    grid = make_grid(x_left, x_right, n_cells)
    bathymetry = Bathymetry.from_function(grid, bottom)
    if not surface_level - float(np.max(bathymetry.b)) > config.dry_eps:
        raise ConfigurationError(
            f"Surface level {surface_level:g} m does not cover the bottom "
            f"(max {float(np.max(bathymetry.b)):g} m)"
        )
    field = lake_at_rest(grid, bathymetry, surface_level)
    h0 = field.h

    service = SimulationService(_lake_scenario(bottom, surface_level, x_left, x_right), config)
    step_q = step_dh = 0.0
    for n in range(n_steps):
        previous = field
        field = service.step(field, stable_dt(field, config)).field
        if n == 0:
            step_q = float(np.max(np.abs(field.q - previous.q)))
            step_dh = float(np.max(np.abs(field.h - previous.h)))

    return GridDefect(
        n_cells=n_cells,
        dx=grid.dx,
        max_abs_q=step_q,
        max_abs_dh=step_dh,
        drift_abs_q=float(np.max(np.abs(field.q))),
        drift_abs_dh=float(np.max(np.abs(field.h - h0))),
    )


def check_c_property(
    scheme: Scheme,
    bottom: BottomFunction,
    surface_level: float,
    grid_sizes: Sequence[int] = DEFAULT_GRIDS,
    n_steps: int = DEFAULT_STEPS,
    config: Optional[RunConfig] = None,
    x_left: float = 0.0,
    x_right: float = 1.0,
) -> CPropertyReport:
    """Run water at rest on every grid and classify how well it stays at rest.

    Deterministic: the same inputs give identical reports.
    """
    if not grid_sizes:
        raise ConfigurationError("At least one grid size is required")
    scheme = Scheme.from_string(scheme) if isinstance(scheme, str) else scheme

    per_grid = tuple(
        measure_defect(scheme, bottom, surface_level, n, n_steps, config, x_left, x_right)
        for n in sorted(set(grid_sizes))
    )
    classification, order = classify(per_grid)
    report = CPropertyReport(
        scheme=scheme,
        n_cells=max(r.n_cells for r in per_grid),
        max_abs_q=max(r.max_abs_q for r in per_grid),
        max_abs_dh=max(r.max_abs_dh for r in per_grid),
        classification=classification,
        order=order,
        n_steps=n_steps,
        per_grid=per_grid,
    )
    logger.info(f"C-property of {scheme.label}: {report.label}")
    return report
