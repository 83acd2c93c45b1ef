"""Centralized logging configuration for SplitSWE."""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

ROOT_LOGGER_NAME = "splitswe"


class ColoredFormatter(logging.Formatter):
    """Colored log formatter for solver output in a terminal."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with colors, leaving the record untouched."""
        color = self.COLORS.get(record.levelname, self.RESET)
        original = record.levelname
        record.levelname = f"{color}{original:8s}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def _level_from_env() -> int:
    level = logging.getLevelName(os.getenv("SPLITSWE_LOG_LEVEL", "INFO").upper())
    return level if isinstance(level, int) else logging.INFO


def setup_logger(
    name: str,
    level: Optional[int] = None,
    log_file: Optional[Path] = None,
) -> logging.Logger:
    """Configure and return a logger with consistent formatting.

    Args:
        name: Logger name (usually __name__)
        level: Logging level; falls back to SPLITSWE_LOG_LEVEL, then INFO
        log_file: Optional file path to write logs to

    Returns:
        Configured logger instance
    """
    level = _level_from_env() if level is None else level
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # Remove existing handlers to avoid duplicates
    logger.handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(
        ColoredFormatter("%(levelname)s | %(name)s | %(message)s")
    )
    logger.addHandler(console_handler)

    if log_file:
        logger.addHandler(_file_handler(Path(log_file), level))

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get or create a logger with the standard configuration.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        return setup_logger(name)
    return logger


def _file_handler(log_file: Path, level: int) -> logging.FileHandler:
    log_file.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(log_file)
    handler.setLevel(level)
    handler.setFormatter(
        logging.Formatter("%(asctime)s | %(levelname)-8s | %(name)s | %(message)s")
    )
    return handler


def _project_loggers() -> List[logging.Logger]:
    return [
        logger
        for name, logger in logging.Logger.manager.loggerDict.items()
        if isinstance(logger, logging.Logger)
        and (name.startswith("src") or name.startswith(ROOT_LOGGER_NAME))
    ]


def set_level(level: int, log_file: Optional[Path] = None) -> None:
    """Apply a level to every logger already created under the project namespace.

    File handlers from an earlier call are closed; with ``log_file`` all project
    loggers share one new handler appending to that file.
    """
    file_handler = _file_handler(Path(log_file), level) if log_file else None
    for logger in _project_loggers():
        logger.setLevel(level)
        for handler in list(logger.handlers):
            if isinstance(handler, logging.FileHandler):
                logger.removeHandler(handler)
                handler.close()
            else:
                handler.setLevel(level)
        if file_handler is not None:
            logger.addHandler(file_handler)
