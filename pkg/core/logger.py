"""Centralized logging utility with colored stderr output.

Logs always go to stderr so that commands printing machine-readable
results (critical angles, sweep reports) keep stdout clean.
"""

import logging
import os
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler


LOG_LEVEL_ENV = "ORIGON_LOG_LEVEL"

_loggers: dict[str, logging.Logger] = {}


def resolve_level(level: Optional[int] = None) -> int:
    """
    Resolve the effective logging level.

    Priority order:
        1. Explicit ``level`` argument
        2. ORIGON_LOG_LEVEL environment variable (level name, e.g. "DEBUG")
        3. INFO

    Unknown level names fall back to INFO.
    """
    if level is not None:
        return level

    name = os.getenv(LOG_LEVEL_ENV, "").strip().upper()
    if not name:
        return logging.INFO

    resolved = logging.getLevelName(name)
    return resolved if isinstance(resolved, int) else logging.INFO


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Get or create a logger with colored console output.

    Args:
        name: Logger name (typically __name__ of calling module).
        level: Optional logging level. Defaults to ORIGON_LOG_LEVEL or INFO.

    Returns:
        Configured logger instance.
    """
    if name in _loggers:
        if level is not None:
            _loggers[name].setLevel(level)
        return _loggers[name]

    logger = logging.getLogger(name)
    logger.setLevel(resolve_level(level))

    if not logger.handlers:
        console = Console(stderr=True)
        handler = RichHandler(
            console=console,
            show_time=True,
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)

    logger.propagate = False
    _loggers[name] = logger
    return logger
