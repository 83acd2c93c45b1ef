"""Field builders shared by the test modules."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.domain.grid import Bathymetry, Field, make_grid

G = 9.81


def make_field(
    h: Sequence[float],
    q: Optional[Sequence[float]] = None,
    b: Optional[Sequence[float]] = None,
    dx: float = 1.0,
    time: float = 0.0,
) -> Field:
    """Field on [0, n dx] from raw cell values."""
    h = np.asarray(h, dtype=np.float64)
    n = h.size
    grid = make_grid(0.0, n * dx, n)
    q = np.zeros(n) if q is None else np.asarray(q, dtype=np.float64)
    b = np.zeros(n) if b is None else np.asarray(b, dtype=np.float64)
    return Field(grid=grid, h=h, q=q, bathymetry=Bathymetry(b=b), time=time)
