"""Logging configuration for the stochimpact CLI."""

import logging
import sys
from typing import TextIO

from .constants import LOG_DATE_FORMAT, LOG_FORMAT, LOGGER_ROOT


class CLILoggerMixin:
    """Mixin to add logging capabilities to CLI commands."""

    def __init__(self, *args, **kwargs) -> None:
        """Initialize the logger mixin."""
        super().__init__(*args, **kwargs)
        self.logger = get_logger(self.__class__.__name__)


def _make_handler(level: int, stream: TextIO | None = None) -> logging.Handler:
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATE_FORMAT))
    return handler


def get_logger(
    name: str,
    level: int = logging.INFO,
    stream: TextIO | None = None,
) -> logging.Logger:
    """Get a configured logger for the CLI.

    Args:
        name: Logger name, placed under the ``stochimpact`` namespace
        level: Logging level
        stream: Output stream (defaults to stderr)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(f"{LOGGER_ROOT}.{name}")

    # Avoid adding multiple handlers if logger already exists
    if logger.handlers:
        return logger

    logger.setLevel(level)
    logger.addHandler(_make_handler(level, stream))
    logger.propagate = False

    return logger


def setup_cli_logging(
    level: int | str = logging.INFO,
    quiet: bool = False,
    verbose: bool = False,
) -> None:
    """Setup logging for the entire CLI application.

    Engine modules log under ``stochimpact.engine.*`` and inherit this configuration.

    Args:
        level: Base logging level (name or number)
        quiet: Suppress all output except errors
        verbose: Enable verbose output
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG

    root_logger = logging.getLogger(LOGGER_ROOT)
    root_logger.setLevel(level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    root_logger.addHandler(_make_handler(level))
    root_logger.propagate = False


def create_debug_logger(name: str) -> logging.Logger:
    """Create a debug-level logger for development.

    Args:
        name: Logger name

    Returns:
        Debug logger instance
    """
    return get_logger(name, level=logging.DEBUG)
