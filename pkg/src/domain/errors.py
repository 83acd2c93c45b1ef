"""Solver error hierarchy.

Every failure the solver can report derives from ``SolverError`` so callers
(the CLI in particular) can map them to exit codes in one place.
"""

from __future__ import annotations

from typing import Optional


class SolverError(Exception):
    """Base class for all solver failures."""


class ConfigurationError(SolverError, ValueError):
    """Invalid configuration or command-line usage."""


class DepthDomainError(SolverError, ValueError):
    """A depth outside the domain of the requested operation (dry or negative)."""


class SonicDegeneracyError(SolverError):
    """An interface eigenvalue is too close to zero to take its sign."""


class NoWaveError(SolverError):
    """No wet cell is left to carry a wave, so no time step can be chosen."""


class FrictionStabilityError(SolverError):
    """The semi-implicit friction denominator is not positive."""


class BoundaryConsistencyError(SolverError):
    """A prescribed boundary value contradicts the bottom at the boundary."""


class UnsupportedScenarioError(SolverError):
    """The scenario lacks what the operation needs (e.g. an analytic reference)."""


class PositivityError(SolverError):
    """A time step produced a negative depth beyond roundoff."""

    def __init__(self, cell: int, time: float, depth: float, stage: Optional[str] = None):
        self.cell = cell
        self.time = time
        self.depth = depth
        self.stage = stage
        where = f" during {stage}" if stage else ""
        super().__init__(
            f"Negative depth {depth:.3e} m at cell {cell}, t={time:.6g} s{where}"
        )
