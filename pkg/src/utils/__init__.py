"""Utility modules for SplitSWE."""

from .logging import get_logger, set_level, setup_logger

__all__ = ["get_logger", "set_level", "setup_logger"]
