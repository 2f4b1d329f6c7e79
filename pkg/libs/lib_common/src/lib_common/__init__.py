"""Common logging, errors and runtime settings for the SG-WLS libraries."""

import logging
import os
from typing import Optional

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

THREADS_ENV = "SGWLS_THREADS"


class SgwlsError(Exception):
    """Base class for every error raised by the SG-WLS libraries."""


class ConfigError(SgwlsError, ValueError):
    """Invalid parameters, shapes or channel counts."""


class DecodeError(SgwlsError):
    """Malformed or truncated image file."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class FactorizationError(SgwlsError):
    """Non-positive pivot met during the r-band LU factorization."""

    def __init__(self, index: int, pivot: float):
        super().__init__(
            f"Non-positive pivot {pivot!r} at row {index}; system is not SPD"
        )
        self.index = index
        self.pivot = pivot


class ConvergenceError(SgwlsError):
    """Iterative solver stopped at its iteration cap."""

    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"No convergence after {iterations} iterations "
            f"(relative residual {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


class OracleError(SgwlsError):
    """Dense reference solve could not be carried out."""


def setup_logger(log_level: str = "INFO", handler: Optional[logging.Handler] = None) -> None:
    """Set up the logger with the specified log level.

    Args:
        log_level: The log level to use (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        handler: Optional handler to attach, replacing previously attached ones
    """
    numeric_level = getattr(logging, log_level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Invalid log level: {log_level}")
    logger.setLevel(numeric_level)

    if handler is not None:
        for existing in list(logger.handlers):
            logger.removeHandler(existing)
        logger.addHandler(handler)
        logger.propagate = False


def resolve_threads(value: Optional[int] = None) -> int:
    """Resolve the worker count for band solving.

    Args:
        value: Explicit worker count, e.g. from ``--threads``

    Returns:
        ``value`` when given, else ``SGWLS_THREADS`` from the environment, else 1
    """
    if value is None:
        raw = os.environ.get(THREADS_ENV)
        if raw is None or raw.strip() == "":
            return 1
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")

    if value < 1:
        raise ConfigError(f"Thread count must be >= 1, got {value}")
    return value
