"""Centralized configuration management for SplitSWE.

Run parameters live in ``RunConfig``; environment-driven settings (output
location, logging, progress display) are loaded here through python-dotenv.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Tuple

from dotenv import load_dotenv

from src.domain.errors import ConfigurationError
from src.domain.grid import DEFAULT_DRY_EPS
from src.domain.scheme import Scheme

# Load environment variables
load_dotenv()

SUPPORTED_QUADRATURES = ("trapezoidal",)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one simulation run."""

    scheme: Scheme = Scheme.QTRA2
    cfl: float = 0.5
    g: float = 9.81  # m/s²
    manning_M: float = 0.0  # Manning coefficient, used by QTRA3 only
    dry_eps: float = DEFAULT_DRY_EPS  # m
    t_end: float = 0.0  # s
    snapshot_times: Tuple[float, ...] = ()
    n_cells: Optional[int] = None  # None: scenario default

    # Numerics
    sonic_regularization: bool = True
    eigen_eps_factor: float = 1e-8  # eigen_eps = factor * sqrt(g * h_mean)
    positivity_tol: float = 1e-12  # m
    wet_dry: bool = False
    source_quadrature: str = "trapezoidal"
    max_steps: Optional[int] = None  # None: no limit

    def __post_init__(self):
        """Validate ranges and normalize the snapshot schedule."""
        if isinstance(self.scheme, str):
            object.__setattr__(self, "scheme", Scheme.from_string(self.scheme))
        if not (0.0 < self.cfl <= 1.0):
            raise ConfigurationError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not self.g > 0.0:
            raise ConfigurationError(f"g must be positive, got {self.g}")
        if not self.dry_eps > 0.0:
            raise ConfigurationError(f"dry_eps must be positive, got {self.dry_eps}")
        if not self.manning_M >= 0.0:
            raise ConfigurationError(f"manning_M must be non-negative, got {self.manning_M}")
        if not (self.t_end >= 0.0 and math.isfinite(self.t_end)):
            raise ConfigurationError(f"t_end must be finite and non-negative, got {self.t_end}")
        if self.positivity_tol < 0.0 or self.eigen_eps_factor <= 0.0:
            raise ConfigurationError("positivity_tol and eigen_eps_factor must be positive")
        if self.source_quadrature not in SUPPORTED_QUADRATURES:
            raise ConfigurationError(
                f"Unsupported source quadrature '{self.source_quadrature}' "
                f"(available: {', '.join(SUPPORTED_QUADRATURES)})"
            )
        if self.n_cells is not None and self.n_cells < 2:
            raise ConfigurationError(f"n_cells must be at least 2, got {self.n_cells}")
        if self.max_steps is not None and self.max_steps < 0:
            raise ConfigurationError(f"max_steps must be non-negative, got {self.max_steps}")

        times = tuple(float(t) for t in self.snapshot_times)
        if any(b < a for a, b in zip(times, times[1:])):
            raise ConfigurationError(f"snapshot_times must be sorted ascending: {times}")
        if any(t < 0.0 or t > self.t_end for t in times):
            raise ConfigurationError(
                f"snapshot_times must lie in [0, t_end={self.t_end}]: {times}"
            )
        object.__setattr__(self, "snapshot_times", times)

    @property
    def clip_tolerance(self) -> float:
        """Negative depths above minus this value get clipped to zero; deeper ones abort.

        Wet/dry runs clip every negative depth and account for it in the mass ledger.
        """
        if self.wet_dry:
            return math.inf
        return self.positivity_tol

    def with_overrides(self, **changes) -> RunConfig:
        """Create a new config with parameter overrides (validated again)."""
        return replace(self, **changes)


@dataclass
class OutputConfig:
    """Where and how results are written."""

    output_dir: Path = field(default_factory=lambda: Path("output"))
    show_progress: bool = False
    csv_digits: int = 17

    def __post_init__(self):
        """Ensure the directory is a Path object."""
        self.output_dir = Path(self.output_dir)

    @classmethod
    def from_env(cls) -> OutputConfig:
        """Load configuration from environment variables."""
        return cls(
            output_dir=Path(os.getenv("SPLITSWE_OUTPUT_DIR", "output")),
            show_progress=os.getenv("SPLITSWE_SHOW_PROGRESS", "0").lower()
            in ("1", "true", "yes"),
        )


@dataclass
class LoggingConfig:
    """Logging level and optional log file."""

    level: str = "INFO"
    log_file: Optional[Path] = None

    @classmethod
    def from_env(cls) -> LoggingConfig:
        """Load configuration from environment variables."""
        log_file = os.getenv("SPLITSWE_LOG_FILE")
        return cls(
            level=os.getenv("SPLITSWE_LOG_LEVEL", "INFO").upper(),
            log_file=Path(log_file) if log_file else None,
        )


@dataclass
class AppConfig:
    """Application configuration combining the environment-driven sub-configs."""

    output: OutputConfig
    logging: LoggingConfig

    @classmethod
    def from_env(cls) -> AppConfig:
        """Load complete configuration from environment variables."""
        return cls(output=OutputConfig.from_env(), logging=LoggingConfig.from_env())

    def with_overrides(
        self,
        output_params: Optional[dict] = None,
        logging_params: Optional[dict] = None,
    ) -> AppConfig:
        """Create a new config with parameter overrides."""
        return AppConfig(
            output=OutputConfig(**{**self.output.__dict__, **(output_params or {})}),
            logging=LoggingConfig(**{**self.logging.__dict__, **(logging_params or {})}),
        )
