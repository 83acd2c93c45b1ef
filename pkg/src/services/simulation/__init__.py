"""Simulation services for the splitting time loop and its output."""

from .simulation_service import SimulationService, StepOutcome, run_simulation
from .snapshot_writer import (
    CsvSnapshotSink,
    MemorySnapshotSink,
    SnapshotSink,
    SnapshotTable,
    read_snapshot_csv,
    write_snapshot_csv,
)

__all__ = [
    "SimulationService",
    "StepOutcome",
    "run_simulation",
    "CsvSnapshotSink",
    "MemorySnapshotSink",
    "SnapshotSink",
    "SnapshotTable",
    "read_snapshot_csv",
    "write_snapshot_csv",
]
