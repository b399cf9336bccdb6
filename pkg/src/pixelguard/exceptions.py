"""Exception hierarchy for pixelguard."""

from typing import Any

import pydantic

from pixelguard._utils.logger import get_logger

logger = get_logger("exceptions")


class PixelGuardError(Exception):
    """Base exception for all pixelguard errors."""

    reason = "error"

    def __init__(self, message: str, **kwargs: Any) -> None:
        self.message = message
        self.details = kwargs
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message]
        parts.extend(f"{key}={value}" for key, value in self.details.items())
        return " | ".join(parts)


class ValidationError(PixelGuardError):
    """Raised when input validation fails."""

    reason = "invalid-input"


class NoDetectionsError(ValidationError):
    """Raised when the statistics contain no detections to bound."""

    reason = "no-detections"


class ConvergenceError(PixelGuardError):
    """Raised when a numerical iteration exhausts its budget."""

    reason = "convergence"


class SecurityAbortError(PixelGuardError):
    """Base exception for outcomes that must abort the protocol."""

    reason = "security-abort"


class PixelImbalanceError(SecurityAbortError):
    """Raised when the two pixels' single rates differ beyond the threshold."""

    reason = "pixel-imbalance"

    def __init__(
        self,
        message: str,
        imbalance: float | None = None,
        threshold: float | None = None,
        **kwargs: Any,
    ) -> None:
        self.imbalance = imbalance
        self.threshold = threshold
        super().__init__(message, imbalance=imbalance, threshold=threshold, **kwargs)


class InfeasibleStatsError(SecurityAbortError):
    """Raised when no attack or honest assignment reproduces the statistics."""

    reason = "infeasible-stats"


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the command-line exit code.

    Args:
        error: The exception raised while serving a command.

    Returns:
        1 for invalid input, 2 for security aborts.
    """
    if isinstance(error, SecurityAbortError):
        logger.warning(f"Security abort: {error.reason}: {error}")
        return 2
    if isinstance(error, PixelGuardError | pydantic.ValidationError | ValueError | OSError):
        logger.debug(f"Invalid input: {error}")
        return 1
    logger.error(f"Unexpected error: {error!r}")
    return 1


def reason_for(error: BaseException) -> str:
    """Machine-readable reason string for an exception."""
    if isinstance(error, PixelGuardError):
        return error.reason
    return ValidationError.reason
