"""Scenario and finite-key parameter models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, StrictInt

from pixelguard.constants import DEFAULT_EPSILON, DEFAULT_Q, DEFAULT_T_EVE


class SystemParams(BaseModel):
    """Physical scenario of a BB84 link with two-pixel detectors.

    The JSON form uses exactly these snake_case field names; unknown fields
    are rejected.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    mu: float = Field(gt=0.0, allow_inf_nan=False, description="Mean photon number per pulse")
    pulse_rate_hz: float = Field(gt=0.0, allow_inf_nan=False, description="Pulse emission rate")
    loss_db_per_km: float = Field(ge=0.0, allow_inf_nan=False, description="Channel attenuation")
    distance_km: float = Field(ge=0.0, allow_inf_nan=False, description="Alice-Bob channel length")
    t_eve: float = Field(
        default=DEFAULT_T_EVE,
        gt=0.0,
        le=1.0,
        description="Transmission between Alice and Eve's detectors",
    )
    q: float = Field(
        default=DEFAULT_Q,
        gt=0.0,
        le=1.0,
        description="Probability that Bob and Eve choose the same basis",
    )
    eta: float = Field(gt=0.0, le=1.0, description="Per-pixel quantum efficiency")
    alpha: float = Field(default=0.0, ge=0.0, lt=1.0, description="Pixel efficiency mismatch")
    p_b_override: float | None = Field(
        default=None,
        ge=0.0,
        le=1.0,
        description="Honest average per-pixel click probability, replacing the built-in model",
    )

    def at_distance(self, distance_km: float) -> SystemParams:
        """Copy of these parameters with another channel length."""
        return SystemParams.model_validate({**self.model_dump(), "distance_km": distance_km})


class FiniteKeyParams(BaseModel):
    """Pulse count and per-bound confidence parameter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_pulses: StrictInt = Field(gt=0, lt=2**63, description="Total pulses N sent by Alice")
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, lt=0.5, description="Confidence factor")
