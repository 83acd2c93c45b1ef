"""Homogeneous step: conservation formula with Q-scheme fluxes, and CFL time steps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import RunConfig
from src.domain.boundary import BoundaryCondition
from src.domain.errors import NoWaveError, PositivityError
from src.domain.grid import Field
from src.services.numerics.boundary import GhostCells, fill_ghosts
from src.services.numerics.flux import interface_fluxes
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class HomogeneousResult:
    """Intermediate field plus the bookkeeping the mass ledger needs."""

    field: Field
    boundary_inflow: float  # mass entering through both ends during dt, m²
    clipped_mass: float  # mass added by clipping small negative depths, m²


def max_wave_speed(field: Field, config: RunConfig) -> float:
    """max_j (|u_j| + sqrt(g h_j)) over wet cells."""
    wet = field.h >= config.dry_eps
    if not np.any(wet):
        raise NoWaveError(f"All {field.n_cells} cells are dry at t={field.time:.6g} s")
    h = field.h[wet]
    return float(np.max(np.abs(field.q[wet] / h) + np.sqrt(config.g * h)))


def stable_dt(field: Field, config: RunConfig) -> float:
    """Unclamped time step cfl * dx / max wave speed."""
    return config.cfl * field.grid.dx / max_wave_speed(field, config)


def next_stop(time: float, config: RunConfig) -> float:
    """The earliest scheduled snapshot after ``time``, or t_end."""
    pending = [t for t in config.snapshot_times if t > time]
    return min(pending + [config.t_end])


def cfl_dt(field: Field, config: RunConfig) -> float:
    """CFL time step clamped to land on the next snapshot time or t_end."""
    dt = stable_dt(field, config)
    stop = next_stop(field.time, config)
    if field.time + dt >= stop:
        dt = stop - field.time
    return dt


def clip_negative_depths(
    h: np.ndarray, q: np.ndarray, dx: float, tolerance: float, time: float, stage: str
) -> float:
    """Zero small negative depths in place (with their discharge); abort on deep ones."""
    negative = h < 0.0
    if not np.any(negative):
        return 0.0
    j = int(np.argmin(h))
    if h[j] < -tolerance:
        raise PositivityError(cell=j, time=time, depth=float(h[j]), stage=stage)
    added = -float(np.sum(h[negative])) * dx
    h[negative] = 0.0
    q[negative] = 0.0
    logger.debug(f"Clipped {int(np.count_nonzero(negative))} negative depth(s) after {stage}")
    return added


def homogeneous_update(
    field: Field,
    dt: float,
    bc: BoundaryCondition,
    config: RunConfig,
    ghosts: Optional[GhostCells] = None,
) -> HomogeneousResult:
    """Advance the homogeneous system by ``dt`` with the conservation formula.

    Interface i separates extended cells i and i+1, where extended cell 0 is
    the left ghost, so cell j sees fluxes i = j (left) and i = j + 1 (right).
    """
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ValueError(f"Time step must be positive and finite, got {dt}")
    if ghosts is None:
        ghosts = fill_ghosts(field, bc, field.time)

    h_ext = np.concatenate(([ghosts.ghost_left.h], field.h, [ghosts.ghost_right.h]))
    q_ext = np.concatenate(([ghosts.ghost_left.q], field.q, [ghosts.ghost_right.q]))
    flux_h, flux_q = interface_fluxes(
        h_ext[:-1], q_ext[:-1], h_ext[1:], q_ext[1:], config.g, config.dry_eps
    )

    ratio = dt / field.grid.dx
    h_new = field.h - ratio * (flux_h[1:] - flux_h[:-1])
    q_new = field.q - ratio * (flux_q[1:] - flux_q[:-1])

    clipped = clip_negative_depths(
        h_new, q_new, field.grid.dx, config.clip_tolerance, field.time + dt, "homogeneous step"
    )
    inflow = dt * (float(flux_h[0]) - float(flux_h[-1]))
    return HomogeneousResult(
        field=field.evolve(h=h_new, q=q_new, time=field.time + dt),
        boundary_inflow=inflow,
        clipped_mass=clipped,
    )


def homogeneous_step(field: Field, dt: float, bc: BoundaryCondition, config: RunConfig) -> Field:
    """Intermediate field W-hat^{n+1} of the splitting step.

    Raises:
        PositivityError: a depth below -positivity_tol (reports the cell index)
    """
    return homogeneous_update(field, dt, bc, config).field
