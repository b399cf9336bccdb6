"""Sweep output row models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, StrictInt


class SweepRow(BaseModel):
    """One (acquisition time, distance) point of the distance sweep."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    distance_km: float = Field(ge=0.0)
    acquisition_time_s: float = Field(gt=0.0)
    n_pulses: StrictInt = Field(gt=0)
    p_s1_expected: float = Field(ge=0.0, le=1.0)
    p_s2_expected: float = Field(ge=0.0, le=1.0)
    p_c_expected: float = Field(ge=0.0, le=1.0)
    p_c_upper: float = Field(ge=0.0, le=1.0)
    p_s_lower: float = Field(ge=0.0, le=1.0)
    i_e_upper: float = Field(ge=0.0, le=1.0)
    i_e_upper_hoeffding: float | None = Field(default=None, ge=0.0, le=1.0)


class RatioRow(BaseModel):
    """One point of I_E,max as a function of r."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    r: float = Field(ge=1.0)
    i_e_max: float = Field(ge=0.0, le=1.0)
