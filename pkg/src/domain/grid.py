"""Core value types: cell state, uniform grid, bathymetry and solution field.

All types are immutable after construction. Array members are copied and
flagged read-only, so a Field can be shared between threads and compared
across steps without defensive copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from src.domain.errors import ConfigurationError, DepthDomainError

# Vectorized bottom function: cell coordinates (m) -> elevations (m)
BottomFunction = Callable[[np.ndarray], np.ndarray]

DEFAULT_DRY_EPS = 1e-6  # m


def _frozen_array(values, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != 1:
        raise ConfigurationError(f"{name} must be one-dimensional, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class State:
    """Conserved pair at one cell: depth h (m) and discharge per unit width q (m²/s)."""

    h: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.h) and math.isfinite(self.q)):
            raise DepthDomainError(f"Non-finite state (h={self.h}, q={self.q})")
        if self.h < 0.0:
            raise DepthDomainError(f"Negative depth h={self.h}")

    def is_dry(self, dry_eps: float = DEFAULT_DRY_EPS) -> bool:
        return self.h < dry_eps

    def velocity(self, dry_eps: float = DEFAULT_DRY_EPS) -> float:
        """Depth-averaged velocity u = q/h; only defined above the dry threshold."""
        if self.is_dry(dry_eps):
            raise DepthDomainError(f"Velocity undefined for dry state h={self.h}")
        return self.q / self.h

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.q], dtype=np.float64)

    def mirrored(self) -> State:
        """Reflection through a wall: same depth, opposite discharge."""
        return State(h=self.h, q=-self.q)

    @staticmethod
    def mean(u: State, v: State) -> State:
        """Arithmetic mean of the conserved variables."""
        return State(h=0.5 * (u.h + v.h), q=0.5 * (u.q + v.q))


@dataclass(frozen=True)
class Grid:
    """Uniform 1D grid; cell j covers [x_{j-1/2}, x_{j+1/2}]."""

    n_cells: int
    x_left: float
    x_right: float

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @cached_property
    def cell_centers(self) -> np.ndarray:
        centers = self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx
        centers.setflags(write=False)
        return centers

    @property
    def length(self) -> float:
        return self.x_right - self.x_left


def make_grid(x_left: float, x_right: float, n_cells: int) -> Grid:
    """Build a uniform grid with centered cell coordinates.

    Raises:
        ConfigurationError: fewer than two cells or a degenerate domain
    """
    if int(n_cells) != n_cells or n_cells < 2:
        raise ConfigurationError(f"A grid needs at least 2 cells, got {n_cells}")
    if not (math.isfinite(x_left) and math.isfinite(x_right)) or x_right <= x_left:
        raise ConfigurationError(f"Degenerate domain [{x_left}, {x_right}]")
    return Grid(n_cells=int(n_cells), x_left=float(x_left), x_right=float(x_right))


@dataclass(frozen=True, eq=False)
class Bathymetry:
    """Bottom elevations at cell centers.

    ``b`` is the effective bottom used by the source terms. ``b_pristine`` keeps
    the discretized analytic bottom; the two differ only while a wet/dry
    redefinition is active.
    """

    b: np.ndarray
    b_analytic: Optional[BottomFunction] = None
    b_pristine: Optional[np.ndarray] = None

    def __post_init__(self):
        b = _frozen_array(self.b, "bathymetry")
        if not np.all(np.isfinite(b)):
            raise ConfigurationError("Bathymetry contains non-finite values")
        object.__setattr__(self, "b", b)
        pristine = b if self.b_pristine is None else _frozen_array(self.b_pristine, "bathymetry")
        if pristine.shape != b.shape:
            raise ConfigurationError("Effective and pristine bottoms differ in length")
        object.__setattr__(self, "b_pristine", pristine)

    @classmethod
    def from_function(cls, grid: Grid, bottom: BottomFunction) -> Bathymetry:
        """Sample a continuous bottom at the cell centers."""
        values = np.asarray(bottom(grid.cell_centers), dtype=np.float64)
        if values.shape != (grid.n_cells,):
            values = np.broadcast_to(values, (grid.n_cells,))
        return cls(b=values, b_analytic=bottom)

    @classmethod
    def flat(cls, grid: Grid, level: float = 0.0) -> Bathymetry:
        return cls.from_function(grid, lambda x: np.full_like(x, level))

    @property
    def is_redefined(self) -> bool:
        return not np.array_equal(self.b, self.b_pristine)

    def with_effective(self, b: np.ndarray) -> Bathymetry:
        """Same pristine bottom, new effective values."""
        return Bathymetry(b=b, b_analytic=self.b_analytic, b_pristine=self.b_pristine)

    def __len__(self) -> int:
        return len(self.b)


@dataclass(frozen=True, eq=False)
class Field:
    """One time level of the solution: cell averages of h and q plus the bottom."""

    grid: Grid
    h: np.ndarray
    q: np.ndarray
    bathymetry: Bathymetry
    time: float = 0.0

    def __post_init__(self):
        h = _frozen_array(self.h, "h")
        q = _frozen_array(self.q, "q")
        n = self.grid.n_cells
        if h.shape != (n,) or q.shape != (n,) or len(self.bathymetry) != n:
            raise ConfigurationError(
                f"Field arrays must have {n} cells "
                f"(h={h.shape}, q={q.shape}, b={len(self.bathymetry)})"
            )
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(q))):
            raise DepthDomainError(f"Non-finite state at t={self.time}")
        if np.any(h < 0.0):
            j = int(np.argmin(h))
            raise DepthDomainError(f"Negative depth {h[j]:.3e} at cell {j}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "q", q)

    @property
    def n_cells(self) -> int:
        return self.grid.n_cells

    def state(self, j: int) -> State:
        return State(h=float(self.h[j]), q=float(self.q[j]))

    def wet_mask(self, dry_eps: float = DEFAULT_DRY_EPS) -> np.ndarray:
        return self.h >= dry_eps

    def mass(self) -> float:
        """Total water volume per unit width, sum of h_j dx (m²)."""
        return float(np.sum(self.h) * self.grid.dx)

    def evolve(
        self,
        h: Optional[np.ndarray] = None,
        q: Optional[np.ndarray] = None,
        bathymetry: Optional[Bathymetry] = None,
        time: Optional[float] = None,
    ) -> Field:
        """Return a copy with the given members replaced."""
        changes = {
            key: value
            for key, value in (("h", h), ("q", q), ("bathymetry", bathymetry), ("time", time))
            if value is not None
        }
        return replace(self, **changes)


def free_surface(field: Field) -> np.ndarray:
    """Free-surface elevation eta_j = h_j + b_j, using the effective bottom."""
    return field.h + field.bathymetry.b


def lake_at_rest(grid: Grid, bathymetry: Bathymetry, level: float) -> Field:
    """Water at rest with flat surface ``level`` (dry where the bottom is higher)."""
    h = np.maximum(level - bathymetry.b, 0.0)
    return Field(grid=grid, h=h, q=np.zeros(grid.n_cells), bathymetry=bathymetry)
