"""Wet/dry front treatment: bottom redefinition and discharge zeroing.

A cell is dry when h_j < dry_eps. Both operations are single vectorized
passes over pre-pass values, so they never cascade along the grid.
"""

from __future__ import annotations

import numpy as np

from src.domain.grid import Field
from src.utils.logging import get_logger

logger = get_logger(__name__)


def redefine_bottom(field: Field, dry_eps: float) -> Field:
    """Adjust the effective bottom at wet/dry fronts to remove spurious pressure forces.

    Evaluated from the pristine bottom every call, so the redefinition follows
    the front instead of accumulating. For j >= 1:

    * I_j dry, I_{j-1} wet, eta_{j-1} < eta_j: b_j = b_{j-1} + h_{j-1}
    * I_j wet, I_{j-1} dry, eta_{j-1} > eta_j: b_j = b_{j-1} - h_j

    Only the bathymetry changes; h and q are carried over untouched.
    """
    h = field.h
    b = field.bathymetry.b_pristine
    dry = h < dry_eps
    eta = h + b

    b_new = b.copy()
    left_wet = ~dry[:-1]
    rises = eta[:-1] < eta[1:]

    rule_dry = dry[1:] & left_wet & rises
    rule_wet = ~dry[1:] & ~left_wet & (eta[:-1] > eta[1:])

    tail = b_new[1:]
    tail[rule_dry] = b[:-1][rule_dry] + h[:-1][rule_dry]
    tail[rule_wet] = b[:-1][rule_wet] - h[1:][rule_wet]

    if np.array_equal(b_new, field.bathymetry.b):
        return field
    logger.debug(
        f"Bottom redefined at {int(np.count_nonzero(rule_dry | rule_wet))} front cell(s) "
        f"at t={field.time:.6g} s"
    )
    return field.evolve(bathymetry=field.bathymetry.with_effective(b_new))


def zero_front_discharge(field: Field, dry_eps: float) -> Field:
    """Zero the discharge of dry cells and of wet cells flowing into a dry neighbor.

    A missing neighbor at either end of the domain is never treated as dry.
    Idempotent.
    """
    h, q = field.h, field.q
    dry = h < dry_eps
    dry_left = np.zeros_like(dry)
    dry_right = np.zeros_like(dry)
    dry_left[1:] = dry[:-1]
    dry_right[:-1] = dry[1:]

    blocked = dry | (~dry & (q < 0.0) & dry_left) | (~dry & (q > 0.0) & dry_right)
    if not np.any(blocked & (q != 0.0)):
        return field
    return field.evolve(q=np.where(blocked, 0.0, q))

