"""Splitting scheme selector."""

from __future__ import annotations

from enum import Enum

from src.domain.errors import ConfigurationError


class Scheme(Enum):
    """The three time-splitting schemes.

    All share the Q-scheme homogeneous step and differ in the source step.
    """

    QTRA1 = "qtra1"  # trapezoidal source, central bottom slope
    QTRA2 = "qtra2"  # upwinded left/right source average
    QTRA3 = "qtra3"  # upwinded source with semi-implicit Manning friction

    @classmethod
    def from_string(cls, value: str) -> Scheme:
        """Convert a user-supplied name such as ``QTra2`` or ``qtra2``."""
        try:
            return cls(value.strip().lower().replace("-", ""))
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ConfigurationError(f"Unknown scheme '{value}' (choose from {choices})")

    @property
    def label(self) -> str:
        return {"qtra1": "Q-tra1", "qtra2": "Q-tra2", "qtra3": "Q-tra3"}[self.value]

    @property
    def uses_upwind_source(self) -> bool:
        return self is not Scheme.QTRA1

    @property
    def has_friction(self) -> bool:
        return self is Scheme.QTRA3
