"""Utility modules for pixelguard.

Validators live in ``pixelguard._utils.validators`` and are imported from
there directly; they depend on ``pixelguard.exceptions``, which itself
imports the logger from this package.
"""

from pixelguard._utils.logger import get_logger, logger, setup_logging

__all__ = [
    "get_logger",
    "logger",
    "setup_logging",
]
