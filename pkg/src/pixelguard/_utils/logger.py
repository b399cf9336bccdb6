"""Logging configuration for pixelguard.

Library modules log through children of the ``"pixelguard"`` logger; nothing
is printed until an application (or the CLI's ``--log-level``) calls
:func:`setup_logging`.
"""

from __future__ import annotations

import logging
import sys

logger = logging.getLogger("pixelguard")
logger.addHandler(logging.NullHandler())

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LEVEL_NAMES = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def parse_level(level: int | str) -> int:
    """Numeric logging level from a number or a case-insensitive name.

    Raises:
        ValueError: If the name is not one of ``LEVEL_NAMES``.
    """
    if isinstance(level, int):
        return level
    name = level.strip().upper()
    if name not in LEVEL_NAMES:
        raise ValueError(f"Unknown log level {level!r}; expected one of {', '.join(LEVEL_NAMES)}")
    return int(getattr(logging, name))


def setup_logging(
    level: int | str = logging.INFO,
    format: str | None = None,
    handler: logging.Handler | None = None,
    *,
    capture_warnings: bool = True,
) -> logging.Logger:
    """Configure logging for pixelguard.

    Args:
        level: Logging level, as a number or a name such as ``"DEBUG"``.
        format: Custom format string. If None, uses ``DEFAULT_FORMAT``.
        handler: Custom handler. If None, logs to stderr.
        capture_warnings: Route ``warnings`` (NumPy overflow, SciPy
            convergence notices) into the ``py.warnings`` logger, which
            shares the handler.

    Returns:
        The configured package logger.

    Raises:
        ValueError: If ``level`` is an unknown name.

    Example:
        ```python
        from pixelguard import setup_logging

        # Solver diagnostics (candidate counts, regimes, fallbacks)
        setup_logging("DEBUG")
        ```
    """
    numeric = parse_level(level)
    logger.handlers.clear()
    logger.setLevel(numeric)

    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(numeric)
    handler.setFormatter(logging.Formatter(format or DEFAULT_FORMAT))
    logger.addHandler(handler)

    logging.captureWarnings(capture_warnings)
    warnings_logger = logging.getLogger("py.warnings")
    warnings_logger.handlers.clear()
    if capture_warnings:
        warnings_logger.addHandler(handler)
        warnings_logger.propagate = False

    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """Logger for a module, e.g. ``get_logger("evebound")`` is "pixelguard.evebound".

    Args:
        name: Dotted suffix below ``pixelguard``. None returns the package logger.
    """
    if name is None:
        return logger
    return logging.getLogger(f"pixelguard.{name}")
