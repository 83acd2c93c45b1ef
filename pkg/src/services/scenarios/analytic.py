"""Surface errors against analytic references and between two solutions."""

from __future__ import annotations

from enum import Enum
from typing import Union

import numpy as np

from src.domain.errors import ConfigurationError, UnsupportedScenarioError
from src.domain.grid import DEFAULT_DRY_EPS, Field
from src.domain.scenario import Scenario


class Norm(Enum):
    LINF = "linf"
    L1 = "l1"

    @classmethod
    def from_string(cls, value: Union[str, "Norm"]) -> "Norm":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigurationError(f"Unknown norm '{value}' (available: linf, l1)") from None


def pristine_surface(field: Field) -> np.ndarray:
    """h + b with the analytic (not redefined) bottom."""
    return field.h + field.bathymetry.b_pristine


def _norm(error: np.ndarray, dx: float, norm: Norm) -> float:
    if error.size == 0:
        return 0.0
    if norm is Norm.LINF:
        return float(np.max(np.abs(error)))
    return float(np.sum(np.abs(error)) * dx)


def analytic_error(
    field: Field,
    scenario: Scenario,
    norm: Union[str, Norm] = Norm.LINF,
    dry_eps: float = DEFAULT_DRY_EPS,
) -> float:
    """Norm of computed minus reference surface over the wet cells, in meters.

    The L1 norm is sum |e_j| dx.

    Raises:
        UnsupportedScenarioError: the scenario has no analytic reference
    """
    if not scenario.has_reference:
        raise UnsupportedScenarioError(f"Scenario '{scenario.name}' has no analytic reference")
    norm = Norm.from_string(norm)
    reference = np.asarray(
        scenario.analytic_surface(field.grid.cell_centers, field.time), dtype=np.float64
    )
    wet = field.wet_mask(dry_eps)
    error = pristine_surface(field)[wet] - reference[wet]
    return _norm(error, field.grid.dx, norm)


def surface_difference(
    first: Field,
    second: Field,
    norm: Union[str, Norm] = Norm.L1,
    dry_eps: float = DEFAULT_DRY_EPS,
) -> float:
    """Norm of the surface difference over cells wet in both fields.

    Raises:
        ConfigurationError: the fields live on different grids
    """
    if first.grid != second.grid:
        raise ConfigurationError("Surface difference needs two fields on the same grid")
    norm = Norm.from_string(norm)
    wet = first.wet_mask(dry_eps) & second.wet_mask(dry_eps)
    error = pristine_surface(first)[wet] - pristine_surface(second)[wet]
    return _norm(error, first.grid.dx, norm)
