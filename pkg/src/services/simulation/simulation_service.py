"""Main simulation service running the splitting time loop."""

from __future__ import annotations

import time as clock
from dataclasses import dataclass
from typing import Optional

import numpy as np
from tqdm import tqdm

from src.config import RunConfig
from src.domain.errors import ConfigurationError
from src.domain.grid import Field
from src.domain.report import SimulationSummary
from src.domain.scenario import Scenario
from src.domain.scheme import Scheme
from src.services.numerics.boundary import fill_ghosts
from src.services.numerics.homogeneous import cfl_dt, homogeneous_update, next_stop
from src.services.numerics.sources import build_source_context, source_update
from src.services.numerics.wetdry import redefine_bottom, zero_front_discharge
from src.services.scenarios.catalog import initial_field
from src.services.simulation.snapshot_writer import SnapshotSink
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class StepOutcome:
    """Result of one splitting step."""

    field: Field
    boundary_inflow: float
    clipped_mass: float
    boundary_source_mass: float = 0.0


class SimulationService:
    """Advances a scenario with the configured scheme: S(dt) after A(dt) each step."""

    def __init__(
        self,
        scenario: Scenario,
        config: RunConfig,
        sink: Optional[SnapshotSink] = None,
        show_progress: bool = False,
    ):
        """Initialize simulation service.

        Args:
            scenario: Benchmark to run (domain, bottom, initial and boundary data)
            config: Resolved run parameters
            sink: Receiver of scheduled snapshots, optional
            show_progress: Display a tqdm bar over simulated time
        """
        self.scenario = scenario
        self.config = config
        self.sink = sink
        self.show_progress = show_progress

    def initial_field(self) -> Field:
        return initial_field(self.scenario, self.config.n_cells)

    def validate(self, field: Field) -> None:
        """Reject schemes that cannot handle the initial data.

        Raises:
            ConfigurationError: dry cells without wet/dry support
        """
        config = self.config
        dry = ~field.wet_mask(config.dry_eps)
        if np.any(dry) and not (config.scheme is Scheme.QTRA3 and config.wet_dry):
            raise ConfigurationError(
                f"{config.scheme.label} needs a wet domain, but {int(np.count_nonzero(dry))} "
                f"cell(s) of '{self.scenario.name}' start dry (first at cell {int(np.argmax(dry))})"
            )

    def step(self, field: Field, dt: float) -> StepOutcome:
        """One splitting step of length ``dt``.

        Order: bottom redefinition (wet/dry runs), ghosts at t^n, homogeneous
        update, source update, discharge zeroing at fronts (wet/dry runs).
        """
        config = self.config
        prev = redefine_bottom(field, config.dry_eps) if config.wet_dry else field

        ghosts = fill_ghosts(prev, self.scenario.boundary, prev.time)
        context = build_source_context(prev, ghosts)
        homogeneous = homogeneous_update(prev, dt, self.scenario.boundary, config, ghosts)
        sourced = source_update(homogeneous.field, prev, context, dt, config)

        new = sourced.field
        if config.wet_dry:
            new = zero_front_discharge(new, config.dry_eps)
        return StepOutcome(
            field=new,
            boundary_inflow=homogeneous.boundary_inflow,
            clipped_mass=homogeneous.clipped_mass + sourced.clipped_mass,
            boundary_source_mass=sourced.boundary_source_mass,
        )

    def run(self) -> SimulationSummary:
        """Run from t = 0 to t_end, writing scheduled snapshots.

        Returns:
            SimulationSummary with the mass ledger and the final field
        """
        config = self.config
        field = self.initial_field()
        self.validate(field)

        logger.info(
            f"Running {self.scenario.name} with {config.scheme.label}: "
            f"{field.n_cells} cells, cfl={config.cfl}, t_end={config.t_end:g} s"
        )

        summary = SimulationSummary(
            scenario=self.scenario.name,
            scheme=config.scheme,
            n_cells=field.n_cells,
            steps=0,
            final_time=0.0,
            min_depth=float(np.min(field.h)),
            max_abs_q=float(np.max(np.abs(field.q))),
            initial_mass=field.mass(),
            final_mass=field.mass(),
        )
        pending = list(config.snapshot_times)
        started = clock.perf_counter()

        while pending and pending[0] <= field.time:
            self._snapshot(field, summary)
            pending.pop(0)

        with tqdm(
            total=config.t_end,
            unit="s",
            desc=self.scenario.name,
            disable=not self.show_progress,
        ) as bar:
            while field.time < config.t_end:
                if config.max_steps is not None and summary.steps >= config.max_steps:
                    logger.warning(
                        f"Stopped after max_steps={config.max_steps} at t={field.time:.6g} s"
                    )
                    break

                stop = next_stop(field.time, config)
                dt = cfl_dt(field, config)
                clamped = dt == stop - field.time
                outcome = self.step(field, dt)
                field = outcome.field
                if clamped:
                    # land exactly on the scheduled time
                    field = field.evolve(time=stop)

                summary.steps += 1
                summary.boundary_inflow += outcome.boundary_inflow
                summary.clipped_mass += outcome.clipped_mass
                summary.boundary_source_mass += outcome.boundary_source_mass
                summary.min_depth = min(summary.min_depth, float(np.min(field.h)))
                summary.max_abs_q = max(summary.max_abs_q, float(np.max(np.abs(field.q))))
                bar.update(dt)
                logger.debug(f"step {summary.steps}: dt={dt:.6e} s, t={field.time:.6g} s")

                while pending and pending[0] <= field.time:
                    self._snapshot(field, summary)
                    pending.pop(0)

        summary.final_time = field.time
        summary.final_mass = field.mass()
        summary.final_field = field
        summary.elapsed_s = clock.perf_counter() - started
        self._report(summary)
        return summary

    def _snapshot(self, field: Field, summary: SimulationSummary) -> None:
        if self.sink is None:
            return
        path = self.sink.write(field)
        if path is not None:
            summary.snapshot_paths.append(path)

    def _report(self, summary: SimulationSummary) -> None:
        """Log run statistics."""
        logger.info(
            f"Completed {summary.steps} steps to t={summary.final_time:.6g} s "
            f"in {summary.elapsed_s:.2f} s"
        )
        logger.info(
            f"  min depth {summary.min_depth:.6g} m, max |q| {summary.max_abs_q:.6g} m²/s, "
            f"mass defect {summary.mass_defect:.3e} m² "
            f"(relative {summary.relative_mass_defect:.3e})"
        )
        if summary.clipped_mass > 0.0:
            logger.warning(
                f"Clipping negative depths added {summary.clipped_mass:.3e} m² of water"
            )
        if summary.boundary_source_mass != 0.0:
            logger.info(
                f"  friction at the boundary interfaces changed the mass by "
                f"{summary.boundary_source_mass:.3e} m²"
            )


def run_simulation(
    scenario: Scenario,
    config: RunConfig,
    sink: Optional[SnapshotSink] = None,
    show_progress: bool = False,
) -> SimulationSummary:
    """Run ``scenario`` to ``config.t_end`` and return its summary."""
    return SimulationService(scenario, config, sink, show_progress).run()
