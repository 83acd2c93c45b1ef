"""Two-column bottom profiles (``x  b`` per line, ``#`` comments) read from text files."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np

from src.domain.errors import ConfigurationError
from src.utils.logging import get_logger

logger = get_logger(__name__)

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_TIDAL_BOTTOM = DATA_DIR / "tidal_bottom.txt"


class BathymetryProfile:
    """Bottom given by sampled points, linearly interpolated in between."""

    def __init__(self, x: np.ndarray, b: np.ndarray, source: Optional[Path] = None):
        self.x = np.asarray(x, dtype=np.float64)
        self.b = np.asarray(b, dtype=np.float64)
        self.source = source
        if self.x.shape != self.b.shape or self.x.size < 2:
            raise ConfigurationError(f"A bottom profile needs at least two (x, b) points: {source}")
        if np.any(np.diff(self.x) <= 0.0):
            raise ConfigurationError(f"Bottom profile abscissae must increase strictly: {source}")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.b))):
            raise ConfigurationError(f"Bottom profile contains non-finite values: {source}")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.interp(x, self.x, self.b)

    @property
    def max_elevation(self) -> float:
        return float(np.max(self.b))

    def covers(self, x_left: float, x_right: float) -> bool:
        return self.x[0] <= x_left and self.x[-1] >= x_right


def load_bottom_profile(path: Union[str, Path, None] = None) -> BathymetryProfile:
    """Read a profile file; the shipped tidal bottom when ``path`` is None.

    Raises:
        ConfigurationError: unreadable or malformed file
    """
    path = Path(path) if path is not None else DEFAULT_TIDAL_BOTTOM
    try:
        data = np.loadtxt(path, comments="#", ndmin=2)
    except OSError as e:
        raise ConfigurationError(f"Cannot read bottom file {path}: {e}") from e
    except ValueError as e:
        raise ConfigurationError(f"Malformed bottom file {path}: {e}") from e

    if data.shape[1] != 2:
        raise ConfigurationError(f"Bottom file {path} must have two columns, found {data.shape[1]}")

    profile = BathymetryProfile(data[:, 0], data[:, 1], source=path)
    logger.debug(f"Loaded bottom profile with {profile.x.size} points from {path}")
    return profile
