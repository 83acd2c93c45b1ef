"""Source-term steps that complete a splitting step.

* ``source_step_trapezoidal`` (Q-tra1): depth untouched, discharge integrated
  with the trapezoidal rule and a central bottom slope.
* ``source_step_upwind`` (Q-tra2): the source is projected with D_L and D_R
  at the left and right interface means, integrated with the depth frozen at
  those means, and the two results are averaged.
* ``source_step_friction`` (Q-tra3): as Q-tra2 with a Manning term, explicit
  in the depth row and semi-implicit in the discharge row.

All coefficients come from the field at t^n (``prev_field``); the steps only
read the intermediate field for the values they update.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.config import RunConfig
from src.domain.errors import ConfigurationError, FrictionStabilityError
from src.domain.grid import Field, State
from src.services.numerics.boundary import GhostCells
from src.services.numerics.flux import sign_matrix
from src.services.numerics.homogeneous import clip_negative_depths

SideUpdate = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class SourceContext:
    """Bottom slopes and t^n data shared by the source steps of one splitting step."""

    b_prime_central: np.ndarray  # (b_{j+1} - b_{j-1}) / 2dx
    b_prime_left: np.ndarray  # (b_j - b_{j-1}) / dx
    b_prime_right: np.ndarray  # (b_{j+1} - b_j) / dx
    h_prev: np.ndarray  # depths at t^n
    ghost_left: State
    ghost_right: State


def build_source_context(prev_field: Field, ghosts: GhostCells) -> SourceContext:
    """Slopes from the effective bottom, padded with the ghost bottoms."""
    dx = prev_field.grid.dx
    b_ext = np.concatenate(
        ([ghosts.ghost_b_left], prev_field.bathymetry.b, [ghosts.ghost_b_right])
    )
    return SourceContext(
        b_prime_central=(b_ext[2:] - b_ext[:-2]) / (2.0 * dx),
        b_prime_left=(b_ext[1:-1] - b_ext[:-2]) / dx,
        b_prime_right=(b_ext[2:] - b_ext[1:-1]) / dx,
        h_prev=prev_field.h,
        ghost_left=ghosts.ghost_left,
        ghost_right=ghosts.ghost_right,
    )


def source_step_trapezoidal(hat_field: Field, ctx: SourceContext, dt: float, config: RunConfig) -> Field:
    """q^{n+1} = q-hat - g b'_central (dt/2)(h^n + h-hat); h is returned unchanged."""
    if config.source_quadrature != "trapezoidal":
        raise ConfigurationError(f"Unsupported source quadrature '{config.source_quadrature}'")
    depth_integral = 0.5 * dt * (ctx.h_prev + hat_field.h)
    q_new = hat_field.q - config.g * ctx.b_prime_central * depth_integral
    return hat_field.evolve(q=q_new)


def semi_implicit_discharge(q_hat, d22, dt, g, h_bar, b_prime, manning_M, speed):
    """Closed-form discharge of the frozen-coefficient ODE with implicit Manning drag.

    q = (q_hat - d22 dt g h_bar b') / (1 + d22 dt g h_bar^{-4/3} M² |u_bar|)
    """
    numerator = q_hat - d22 * dt * g * h_bar * b_prime
    denominator = 1.0 + d22 * dt * g * h_bar ** (-4.0 / 3.0) * manning_M**2 * speed
    return numerator, denominator


def interface_means(prev_field: Field, ctx: SourceContext) -> Tuple[np.ndarray, np.ndarray]:
    """Means of the conserved variables at the n+1 interfaces, ghosts included."""
    h_ext = np.concatenate(([ctx.ghost_left.h], prev_field.h, [ctx.ghost_right.h]))
    q_ext = np.concatenate(([ctx.ghost_left.q], prev_field.q, [ctx.ghost_right.q]))
    return 0.5 * (h_ext[:-1] + h_ext[1:]), 0.5 * (q_ext[:-1] + q_ext[1:])


def _one_side(
    hat_h: np.ndarray,
    hat_q: np.ndarray,
    h_bar: np.ndarray,
    q_bar: np.ndarray,
    b_prime: np.ndarray,
    orientation: float,
    dt: float,
    config: RunConfig,
    manning_M: float,
) -> SideUpdate:
    """Integrate W' = D G over dt with h frozen at the interface mean.

    ``orientation`` is +1 for D_L = I + S and -1 for D_R = I - S.
    """
    h_side = hat_h.copy()
    q_side = hat_q.copy()
    wet = h_bar > config.dry_eps
    if not np.any(wet):
        return h_side, q_side

    hb, qb, slope = h_bar[wet], q_bar[wet], b_prime[wet]
    _, s12, _, s22 = sign_matrix(
        hb, qb, config.g, config.sonic_regularization, config.eigen_eps_factor
    )
    d12 = orientation * s12
    d22 = 1.0 + orientation * s22
    g = config.g
    bed = g * hb * slope

    if manning_M > 0.0:
        speed = np.abs(qb) / hb  # |(q_j + q_{j-1}) / (h_j + h_{j-1})|
        drag = g * hb ** (-4.0 / 3.0) * manning_M**2 * speed
        h_side[wet] = hat_h[wet] - dt * d12 * bed - dt * d12 * drag * qb
        numerator, denominator = semi_implicit_discharge(
            hat_q[wet], d22, dt, g, hb, slope, manning_M, speed
        )
        if np.any(denominator <= 0.0):
            raise FrictionStabilityError(
                f"Non-positive friction denominator (min {float(np.min(denominator)):.3e})"
            )
        q_side[wet] = numerator / denominator
    else:
        h_side[wet] = hat_h[wet] - dt * d12 * bed
        q_side[wet] = hat_q[wet] - dt * d22 * bed
    return h_side, q_side


def one_sided_updates(
    hat_field: Field,
    prev_field: Field,
    ctx: SourceContext,
    dt: float,
    config: RunConfig,
    manning_M: float = 0.0,
) -> Tuple[SideUpdate, SideUpdate]:
    """Left-upwinded and right-upwinded results ((h_L, q_L), (h_R, q_R)) per cell."""
    h_bar, q_bar = interface_means(prev_field, ctx)
    left = _one_side(
        hat_field.h, hat_field.q, h_bar[:-1], q_bar[:-1], ctx.b_prime_left,
        1.0, dt, config, manning_M,
    )
    right = _one_side(
        hat_field.h, hat_field.q, h_bar[1:], q_bar[1:], ctx.b_prime_right,
        -1.0, dt, config, manning_M,
    )
    return left, right


@dataclass(frozen=True)
class SourceResult:
    """Field after the source step plus its mass ledger entries.

    ``boundary_source_mass`` is the depth change the source step makes through
    the two boundary interfaces (m²). Interior interface contributions cancel
    between neighbouring cells; at the ends the explicit Manning term of the
    depth row has no partner.
    """

    field: Field
    clipped_mass: float = 0.0
    boundary_source_mass: float = 0.0


def _averaged(hat_field: Field, left: SideUpdate, right: SideUpdate, config: RunConfig) -> SourceResult:
    (h_l, q_l), (h_r, q_r) = left, right
    h_new = 0.5 * (h_l + h_r)
    q_new = 0.5 * (q_l + q_r)
    dx = hat_field.grid.dx
    boundary = 0.5 * dx * (float(h_l[0] - hat_field.h[0]) + float(h_r[-1] - hat_field.h[-1]))
    clipped = clip_negative_depths(
        h_new, q_new, dx, config.clip_tolerance, hat_field.time, "source step"
    )
    return SourceResult(
        field=hat_field.evolve(h=h_new, q=q_new),
        clipped_mass=clipped,
        boundary_source_mass=boundary,
    )


def source_update(
    hat_field: Field, prev_field: Field, ctx: SourceContext, dt: float, config: RunConfig
) -> SourceResult:
    """Source step of ``config.scheme``."""
    if not config.scheme.uses_upwind_source:
        return SourceResult(field=source_step_trapezoidal(hat_field, ctx, dt, config))
    manning_M = config.manning_M if config.scheme.has_friction else 0.0
    left, right = one_sided_updates(hat_field, prev_field, ctx, dt, config, manning_M)
    return _averaged(hat_field, left, right, config)


def source_step_upwind(
    hat_field: Field, prev_field: Field, ctx: SourceContext, dt: float, config: RunConfig
) -> Field:
    """Q-tra2 source step: average of the D_L- and D_R-projected integrations.

    Raises:
        SonicDegeneracyError: critical interface state with regularization off
        PositivityError: the averaged depth drops below -clip_tolerance
    """
    left, right = one_sided_updates(hat_field, prev_field, ctx, dt, config)
    return _averaged(hat_field, left, right, config).field


def source_step_friction(
    hat_field: Field, prev_field: Field, ctx: SourceContext, dt: float, config: RunConfig
) -> Field:
    """Q-tra3 source step: upwinded bed slope plus semi-implicit Manning friction.

    Raises:
        FrictionStabilityError: a denominator of the implicit update is not positive
    """
    left, right = one_sided_updates(hat_field, prev_field, ctx, dt, config, config.manning_M)
    return _averaged(hat_field, left, right, config).field
