"""CSV snapshots of the solution and the sinks the time loop writes them to."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Protocol, Union

import numpy as np

from src.domain.errors import ConfigurationError
from src.domain.grid import Field
from src.utils.logging import get_logger

logger = get_logger(__name__)

BASE_COLUMNS = ("x", "b", "h", "q", "eta")
EFFECTIVE_BOTTOM_COLUMN = "b_eff"


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def write_snapshot_csv(
    field: Field,
    path: Union[str, Path],
    include_effective: Optional[bool] = None,
    digits: int = 17,
) -> Path:
    """Write one row per cell: x, b, h, q, eta (and b_eff).

    ``b`` is the pristine bottom and ``eta = h + b``. The ``b_eff`` column is
    added when ``include_effective`` is set, or by default when the effective
    bottom differs from the pristine one.

    Raises:
        OSError: the file cannot be written (message names the path)
    """
    path = Path(path)
    bathymetry = field.bathymetry
    if include_effective is None:
        include_effective = bathymetry.is_redefined

    header = list(BASE_COLUMNS)
    if include_effective:
        header.append(EFFECTIVE_BOTTOM_COLUMN)

    x = field.grid.cell_centers
    b = bathymetry.b_pristine
    eta = field.h + b
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for j in range(field.n_cells):
                row = [x[j], b[j], field.h[j], field.q[j], eta[j]]
                if include_effective:
                    row.append(bathymetry.b[j])
                writer.writerow([_fmt(v, digits) for v in row])
    except OSError as e:
        raise OSError(f"Cannot write snapshot {path}: {e}") from e

    logger.debug(f"Wrote snapshot t={field.time:.6g} s to {path}")
    return path


@dataclass(frozen=True, eq=False)
class SnapshotTable:
    """Columns of a snapshot file."""

    x: np.ndarray
    b: np.ndarray
    h: np.ndarray
    q: np.ndarray
    eta: np.ndarray
    b_eff: Optional[np.ndarray] = None

    @property
    def n_cells(self) -> int:
        return len(self.x)


def read_snapshot_csv(path: Union[str, Path]) -> SnapshotTable:
    """Parse a file written by ``write_snapshot_csv``.

    Raises:
        ConfigurationError: the header is not a snapshot header
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, [])
        rows = [[float(v) for v in row] for row in reader if row]

    if tuple(header[: len(BASE_COLUMNS)]) != BASE_COLUMNS:
        raise ConfigurationError(f"Not a snapshot file (header {header}): {path}")

    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(header))
    columns = {name: data[:, i] for i, name in enumerate(header)}
    return SnapshotTable(
        x=columns["x"],
        b=columns["b"],
        h=columns["h"],
        q=columns["q"],
        eta=columns["eta"],
        b_eff=columns.get(EFFECTIVE_BOTTOM_COLUMN),
    )


class SnapshotSink(Protocol):
    """Receives the fields the time loop decides to keep."""

    def write(self, field: Field) -> Optional[Path]: ...


class CsvSnapshotSink:
    """Writes ``<prefix>t=<time>.csv`` files into a directory."""

    def __init__(
        self,
        output_dir: Union[str, Path],
        prefix: str = "snapshot_",
        include_effective: Optional[bool] = None,
        digits: int = 17,
    ):
        self.output_dir = Path(output_dir)
        self.prefix = prefix
        self.include_effective = include_effective
        self.digits = digits
        self.paths: List[Path] = []

    def path_for(self, time: float) -> Path:
        return self.output_dir / f"{self.prefix}t={time:.6g}.csv"

    def write(self, field: Field) -> Optional[Path]:
        path = write_snapshot_csv(
            field, self.path_for(field.time), self.include_effective, self.digits
        )
        self.paths.append(path)
        logger.info(f"Snapshot t={field.time:.6g} s -> {path}")
        return path


class MemorySnapshotSink:
    """Keeps snapshot fields in memory."""

    def __init__(self):
        self.fields: List[Field] = []

    def write(self, field: Field) -> Optional[Path]:
        self.fields.append(field)
        return None

    @property
    def times(self) -> List[float]:
        return [f.time for f in self.fields]
