"""Domain models - immutable value types shared by all services.

They carry no numerics beyond their own invariants.
"""

from .boundary import (
    BoundaryCondition,
    BoundarySpec,
    PrescribedDepth,
    PrescribedDischarge,
    Transmissive,
    Wall,
)
from .errors import (
    BoundaryConsistencyError,
    ConfigurationError,
    DepthDomainError,
    FrictionStabilityError,
    NoWaveError,
    PositivityError,
    SolverError,
    SonicDegeneracyError,
    UnsupportedScenarioError,
)
from .grid import (
    DEFAULT_DRY_EPS,
    Bathymetry,
    Field,
    Grid,
    State,
    free_surface,
    lake_at_rest,
    make_grid,
)
from .report import Classification, CPropertyReport, GridDefect, SimulationSummary
from .scenario import Scenario
from .scheme import Scheme

__all__ = [
    # Core types
    "State",
    "Grid",
    "Bathymetry",
    "Field",
    "DEFAULT_DRY_EPS",
    "make_grid",
    "free_surface",
    "lake_at_rest",
    "Scheme",
    # Boundaries
    "BoundaryCondition",
    "BoundarySpec",
    "Wall",
    "Transmissive",
    "PrescribedDepth",
    "PrescribedDischarge",
    # Scenarios and reports
    "Scenario",
    "Classification",
    "CPropertyReport",
    "GridDefect",
    "SimulationSummary",
    # Errors
    "SolverError",
    "ConfigurationError",
    "DepthDomainError",
    "SonicDegeneracyError",
    "NoWaveError",
    "FrictionStabilityError",
    "BoundaryConsistencyError",
    "UnsupportedScenarioError",
    "PositivityError",
]
