"""Result records: C-property reports and simulation summaries."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from src.domain.grid import Field
from src.domain.scheme import Scheme


class Classification(Enum):
    """How well a scheme preserves water at rest."""

    EXACT = "Exact"
    APPROXIMATE = "Approximate"
    FAILS = "Fails"


@dataclass(frozen=True)
class GridDefect:
    """Lake-at-rest defect measured on one grid.

    ``max_abs_*`` is the change made by one step from the exact lake state;
    ``drift_abs_*`` is the departure from it after the whole run.
    """

    n_cells: int
    dx: float
    max_abs_q: float
    max_abs_dh: float
    drift_abs_q: float = 0.0
    drift_abs_dh: float = 0.0


@dataclass(frozen=True)
class CPropertyReport:
    """Outcome of a lake-at-rest check over one or more grids.

    ``max_abs_q`` and ``max_abs_dh`` are one-step defects maximized over all
    grids; ``order`` is set only for the Approximate and Fails classifications
    when it can be fitted.
    """

    scheme: Scheme
    n_cells: int
    max_abs_q: float
    max_abs_dh: float
    classification: Classification
    order: Optional[float] = None
    n_steps: int = 0
    per_grid: Tuple[GridDefect, ...] = ()

    @property
    def label(self) -> str:
        if self.classification is Classification.APPROXIMATE and self.order is not None:
            return f"Approximate order≈{self.order:.1f}"
        return self.classification.value

    def to_table(self) -> str:
        """Plain-text table, one row per grid."""
        lines = [
            f"C-property check: {self.scheme.label}, {self.n_steps} steps",
            f"{'cells':>8} {'dx':>12} {'max|q|':>12} {'max|dh|':>12} {'drift|q|':>12} {'drift|dh|':>12}",
        ]
        for row in self.per_grid:
            lines.append(
                f"{row.n_cells:>8d} {row.dx:>12.4e} {row.max_abs_q:>12.4e} {row.max_abs_dh:>12.4e} "
                f"{row.drift_abs_q:>12.4e} {row.drift_abs_dh:>12.4e}"
            )
        lines.append(f"classification: {self.label}")
        return "\n".join(lines)

    def to_key_values(self) -> str:
        """``key=value`` lines for CI parsing."""
        pairs = [
            ("scheme", self.scheme.value),
            ("n_cells", self.n_cells),
            ("n_steps", self.n_steps),
            ("max_abs_q", f"{self.max_abs_q:.17g}"),
            ("max_abs_dh", f"{self.max_abs_dh:.17g}"),
            ("max_drift_q", f"{max((r.drift_abs_q for r in self.per_grid), default=0.0):.17g}"),
            ("max_drift_dh", f"{max((r.drift_abs_dh for r in self.per_grid), default=0.0):.17g}"),
            ("classification", self.classification.value),
            ("order", "" if self.order is None else f"{self.order:.6g}"),
        ]
        return "\n".join(f"{key}={value}" for key, value in pairs)


@dataclass
class SimulationSummary:
    """Statistics gathered over one run of the splitting loop."""

    scenario: str
    scheme: Scheme
    n_cells: int
    steps: int
    final_time: float
    min_depth: float
    max_abs_q: float
    initial_mass: float
    final_mass: float
    boundary_inflow: float = 0.0  # time-integrated boundary mass flux, m²
    clipped_mass: float = 0.0  # mass added by clipping roundoff negatives, m²
    boundary_source_mass: float = 0.0  # friction source through the end interfaces, m²
    elapsed_s: float = 0.0
    snapshot_paths: List[Path] = field(default_factory=list)
    final_field: Optional[Field] = None

    @property
    def mass_defect(self) -> float:
        """Final mass minus the ledger prediction."""
        expected = (
            self.initial_mass + self.boundary_inflow + self.clipped_mass + self.boundary_source_mass
        )
        return self.final_mass - expected

    @property
    def relative_mass_defect(self) -> float:
        return abs(self.mass_defect) / max(abs(self.initial_mass), 1e-300)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "scheme": self.scheme.value,
            "n_cells": self.n_cells,
            "steps": self.steps,
            "final_time": self.final_time,
            "min_depth": self.min_depth,
            "max_abs_q": self.max_abs_q,
            "initial_mass": self.initial_mass,
            "final_mass": self.final_mass,
            "boundary_inflow": self.boundary_inflow,
            "clipped_mass": self.clipped_mass,
            "boundary_source_mass": self.boundary_source_mass,
            "mass_defect": self.mass_defect,
            "elapsed_s": self.elapsed_s,
            "snapshots": [str(p) for p in self.snapshot_paths],
        }
