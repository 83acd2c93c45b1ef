"""The four benchmark scenarios.

1. Dam break over a bump (walls, Q-scheme agreement).
2. Water at rest over the same bump (stationary solution).
3. Tidal wave over an irregular bottom (asymptotic surface 16 + phi(t)).
4. Shoreline run-up with Manning friction and wet/dry fronts.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Dict, Optional, Union

import numpy as np

from src.config import RunConfig
from src.domain.boundary import BoundaryCondition, PrescribedDepth, PrescribedDischarge, Wall
from src.domain.errors import ConfigurationError
from src.domain.grid import Bathymetry, Field, make_grid
from src.domain.scenario import Scenario
from src.domain.scheme import Scheme
from src.services.scenarios.bathymetry_loader import load_bottom_profile
from src.utils.logging import get_logger

logger = get_logger(__name__)

# Bump on (0.4, 0.6): b = cos(10 pi (x - 1/2)) / 8 + offset
SCALED_BUMP_OFFSET = 0.125
LITERAL_BUMP_OFFSET = 1.0

TIDAL_MEAN_LEVEL = 16.0  # m
TIDAL_PERIOD_SCALE = 86400.0  # s

SHORE_LEVEL = 0.4  # m
SHORE_INFLOW = 0.8  # m²/s
SHORE_INFLOW_DURATION = 0.2  # s
SHORE_MANNING = 0.015
SHORE_DRY_EPS = 1e-4  # m


def bump_bottom(offset: float = SCALED_BUMP_OFFSET) -> Callable[[np.ndarray], np.ndarray]:
    """Cosine bump on (2/5, 3/5), zero elsewhere."""

    def bottom(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        inside = (x > 0.4) & (x < 0.6)
        return np.where(inside, np.cos(10.0 * np.pi * (x - 0.5)) / 8.0 + offset, 0.0)

    return bottom


def tidal_forcing(t: float) -> float:
    """phi(t) = 4 + 4 sin(pi (4t/86400 - 1/2)); phi(0) = 0, phi(10800) = 4."""
    return 4.0 + 4.0 * math.sin(math.pi * (4.0 * t / TIDAL_PERIOD_SCALE - 0.5))


def shore_bottom(x: np.ndarray) -> np.ndarray:
    """Gentle slope up to x = 3 m, then a steep beach."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x <= 3.0, 0.00125 * x + 0.0125, 0.162 * (x - 3.0) + 0.01625)


def test1_dam_break(paper_literal_bump: bool = False) -> Scenario:
    offset = LITERAL_BUMP_OFFSET if paper_literal_bump else SCALED_BUMP_OFFSET
    bottom = bump_bottom(offset)

    def initial(x: np.ndarray):
        b = bottom(x)
        h = np.where(x < 0.5, 1.0 - b, 0.5 - b)
        return np.maximum(h, 0.0), np.zeros_like(x)

    notes = ("bump height scaled to keep both initial states wet",)
    if paper_literal_bump:
        notes = ("literal bump formula: the bump tops out at 1.125 m and dries the crest",)
    return Scenario(
        name="test1",
        title="Dam break over a bump",
        x_left=0.0,
        x_right=1.0,
        bottom=bottom,
        initial_condition=initial,
        boundary=BoundaryCondition.walls(),
        t_end=0.5,
        n_cells=200,
        cfl=0.5,
        notes=notes,
    )


def test2_stationary(paper_literal_bump: bool = False) -> Scenario:
    """Water at rest at level 1 over the bump; the solution never changes."""
    offset = LITERAL_BUMP_OFFSET if paper_literal_bump else SCALED_BUMP_OFFSET
    bottom = bump_bottom(offset)

    def initial(x: np.ndarray):
        return np.maximum(1.0 - bottom(x), 0.0), np.zeros_like(x)

    def surface(x: np.ndarray, t: float) -> np.ndarray:
        return np.maximum(1.0, bottom(x))

    return Scenario(
        name="test2",
        title="Water at rest over a bump",
        x_left=0.0,
        x_right=1.0,
        bottom=bottom,
        initial_condition=initial,
        boundary=BoundaryCondition.walls(),
        t_end=0.25,
        n_cells=50,
        cfl=0.5,
        analytic_surface=surface,
    )


def test3_tidal_wave(bottom_file: Union[str, Path, None] = None) -> Scenario:
    """Slow tide entering a closed basin; the surface stays flat at 16 + phi(t)."""
    bottom = load_bottom_profile(bottom_file)
    if not bottom.covers(0.0, 1500.0):
        raise ConfigurationError(f"Bottom profile {bottom.source} does not cover [0, 1500] m")
    if bottom.max_elevation >= TIDAL_MEAN_LEVEL:
        raise ConfigurationError(
            f"Bottom profile reaches {bottom.max_elevation:g} m, above the mean level "
            f"{TIDAL_MEAN_LEVEL:g} m"
        )

    def initial(x: np.ndarray):
        return TIDAL_MEAN_LEVEL - bottom(x), np.zeros_like(x)

    def surface(x: np.ndarray, t: float) -> np.ndarray:
        return np.full_like(np.asarray(x, dtype=np.float64), TIDAL_MEAN_LEVEL + tidal_forcing(t))

    notes = ()
    if bottom_file is None:
        notes = ("shipped piecewise-linear stand-in bottom profile",)
    return Scenario(
        name="test3",
        title="Tidal wave over an irregular bottom",
        x_left=0.0,
        x_right=1500.0,
        bottom=bottom,
        initial_condition=initial,
        boundary=BoundaryCondition(
            left=PrescribedDepth(level=lambda t: TIDAL_MEAN_LEVEL + tidal_forcing(t)),
            right=Wall(),
        ),
        t_end=10800.0,
        n_cells=100,
        cfl=0.9,
        analytic_surface=surface,
        notes=notes,
    )


def test4_shoreline_friction() -> Scenario:
    """Short inflow pulse running up a beach, with friction and moving shoreline."""

    def initial(x: np.ndarray):
        return np.maximum(SHORE_LEVEL - shore_bottom(x), 0.0), np.zeros_like(x)

    return Scenario(
        name="test4",
        title="Run-up on a beach with Manning friction",
        x_left=0.0,
        x_right=6.0,
        bottom=shore_bottom,
        initial_condition=initial,
        boundary=BoundaryCondition(
            left=PrescribedDischarge(
                discharge=lambda t: SHORE_INFLOW, active=(0.0, SHORE_INFLOW_DURATION)
            ),
            right=Wall(),
        ),
        t_end=5.0,
        n_cells=250,
        cfl=0.5,
        default_scheme=Scheme.QTRA3,
        manning_M=SHORE_MANNING,
        dry_eps=SHORE_DRY_EPS,
        wet_dry=True,
        snapshot_times=(1.0, 2.0, 3.0, 4.0, 5.0),
    )


SCENARIOS: Dict[int, Callable[..., Scenario]] = {
    1: test1_dam_break,
    2: test2_stationary,
    3: test3_tidal_wave,
    4: test4_shoreline_friction,
}


def get_scenario(
    number: int,
    paper_literal_bump: bool = False,
    bottom_file: Union[str, Path, None] = None,
) -> Scenario:
    """Scenario by test number.

    Raises:
        ConfigurationError: unknown number, or an option the scenario does not take
    """
    if number not in SCENARIOS:
        raise ConfigurationError(f"Unknown test {number} (available: {sorted(SCENARIOS)})")
    if paper_literal_bump and number not in (1, 2):
        raise ConfigurationError("The literal bump option applies to tests 1 and 2 only")
    if bottom_file is not None and number != 3:
        raise ConfigurationError("A bottom file applies to test 3 only")

    if number in (1, 2):
        return SCENARIOS[number](paper_literal_bump=paper_literal_bump)
    if number == 3:
        return test3_tidal_wave(bottom_file)
    return SCENARIOS[number]()


def initial_field(scenario: Scenario, n_cells: Optional[int] = None) -> Field:
    """Discretize the scenario's bottom and initial condition at the cell centers."""
    grid = make_grid(scenario.x_left, scenario.x_right, n_cells or scenario.n_cells)
    bathymetry = Bathymetry.from_function(grid, scenario.bottom)
    h, q = scenario.initial_condition(grid.cell_centers)
    return Field(grid=grid, h=h, q=q, bathymetry=bathymetry, time=0.0)


def scenario_config(scenario: Scenario, **overrides) -> RunConfig:
    """Run configuration seeded with the scenario defaults, then ``overrides``.

    Scheduled snapshots past an overridden t_end are dropped with a warning.
    """
    params = dict(
        scheme=scenario.default_scheme,
        cfl=scenario.cfl,
        t_end=scenario.t_end,
        n_cells=scenario.n_cells,
        manning_M=scenario.manning_M or 0.0,
        wet_dry=scenario.wet_dry,
        snapshot_times=scenario.snapshot_times,
    )
    if scenario.dry_eps is not None:
        params["dry_eps"] = scenario.dry_eps
    params.update({key: value for key, value in overrides.items() if value is not None})

    t_end = params["t_end"]
    kept = tuple(t for t in params["snapshot_times"] if t <= t_end)
    if len(kept) < len(params["snapshot_times"]):
        logger.warning(
            f"Dropping snapshot times beyond t_end={t_end:g} s: "
            f"{[t for t in params['snapshot_times'] if t > t_end]}"
        )
        params["snapshot_times"] = kept
    return RunConfig(**params)
