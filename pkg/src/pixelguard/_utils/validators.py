"""Input validators for pixelguard."""

import math

from pixelguard.constants import COUNT_ROUNDING_TOLERANCE
from pixelguard.exceptions import ValidationError


def validate_probability(
    name: str,
    value: float,
    *,
    open_low: bool = False,
    open_high: bool = False,
) -> None:
    """Validate that a value lies in [0, 1] (optionally open at either end).

    Args:
        name: Parameter name used in the error message.
        value: The value to validate.
        open_low: Reject 0.
        open_high: Reject 1.

    Raises:
        ValidationError: If the value is NaN or outside the range.
    """
    if math.isnan(value):
        raise ValidationError(f"{name} must be a number (got NaN)")

    too_low = value <= 0.0 if open_low else value < 0.0
    too_high = value >= 1.0 if open_high else value > 1.0
    if too_low or too_high:
        low = "(" if open_low else "["
        high = ")" if open_high else "]"
        raise ValidationError(f"{name} must lie in {low}0, 1{high} (got {value})")


def validate_positive(name: str, value: float) -> None:
    """Validate that a value is finite and strictly positive.

    Raises:
        ValidationError: If the value is not a positive finite number.
    """
    if not math.isfinite(value) or value <= 0.0:
        raise ValidationError(f"{name} must be a positive number (got {value})")


def validate_range(name_low: str, low: float, name_high: str, high: float) -> None:
    """Validate an ordered, finite range low <= high.

    Raises:
        ValidationError: If the bounds are not finite or not ordered.
    """
    if not (math.isfinite(low) and math.isfinite(high)):
        raise ValidationError(f"{name_low} and {name_high} must be finite")
    if low > high:
        raise ValidationError(f"{name_low} ({low}) must not exceed {name_high} ({high})")


def frequency_to_count(name: str, frequency: float, n_pulses: int) -> int:
    """Convert an observed frequency back to its integer count.

    Args:
        name: Parameter name used in the error message.
        frequency: Observed frequency in [0, 1].
        n_pulses: Number of pulses the frequency was measured over.

    Returns:
        The nearest integer count ``round(n_pulses * frequency)``.

    Raises:
        ValidationError: If the frequency is out of range or is not a count
            divided by ``n_pulses`` within the rounding tolerance.
    """
    validate_probability(name, frequency)
    exact = n_pulses * frequency
    count = round(exact)
    if abs(exact - count) > COUNT_ROUNDING_TOLERANCE * max(1.0, exact):
        raise ValidationError(
            f"{name} * n_pulses is not an integer count "
            f"(got {exact!r} for n_pulses={n_pulses})"
        )
    return int(count)
