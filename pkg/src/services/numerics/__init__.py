"""Numerical building blocks of the splitting step."""

from .boundary import GhostCells, fill_ghosts
from .flux import (
    abs_q_matrix,
    decompose_interface,
    eigendecompose,
    interface_fluxes,
    jacobian,
    numerical_flux,
    physical_flux,
    sign_matrix,
    upwind_matrices,
)
from .homogeneous import HomogeneousResult, cfl_dt, homogeneous_step, homogeneous_update, stable_dt
from .sources import (
    SourceContext,
    SourceResult,
    build_source_context,
    one_sided_updates,
    semi_implicit_discharge,
    source_step_friction,
    source_step_trapezoidal,
    source_step_upwind,
    source_update,
)
from .wetdry import redefine_bottom, zero_front_discharge

__all__ = [
    "GhostCells",
    "fill_ghosts",
    "physical_flux",
    "jacobian",
    "eigendecompose",
    "abs_q_matrix",
    "numerical_flux",
    "sign_matrix",
    "upwind_matrices",
    "decompose_interface",
    "interface_fluxes",
    "HomogeneousResult",
    "cfl_dt",
    "stable_dt",
    "homogeneous_step",
    "homogeneous_update",
    "SourceContext",
    "SourceResult",
    "build_source_context",
    "one_sided_updates",
    "semi_implicit_discharge",
    "source_step_trapezoidal",
    "source_step_upwind",
    "source_step_friction",
    "source_update",
    "redefine_bottom",
    "zero_front_discharge",
]
