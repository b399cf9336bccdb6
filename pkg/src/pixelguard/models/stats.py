"""Detection statistics models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator


class DetectionStats(BaseModel):
    """Per-pulse single and coincidence click probabilities."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p_s1: float = Field(ge=0.0, le=1.0)
    p_s2: float = Field(ge=0.0, le=1.0)
    p_c: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_coincidence(self) -> DetectionStats:
        """A coincidence implies both pixels clicked."""
        if self.p_c > min(self.p_s1, self.p_s2):
            raise ValueError(
                f"p_c ({self.p_c}) exceeds min(p_s1, p_s2) ({min(self.p_s1, self.p_s2)})"
            )
        return self

    @property
    def detection_events(self) -> float:
        """Probability that at least one pixel clicks."""
        return self.p_s1 + self.p_s2 - self.p_c


class ClickCounts(BaseModel):
    """Observed integer counts of singles and coincidences."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_pulses: StrictInt = Field(ge=0)
    n_s1: StrictInt = Field(ge=0)
    n_s2: StrictInt = Field(ge=0)
    n_c: StrictInt = Field(ge=0)

    @model_validator(mode="after")
    def check_counts(self) -> ClickCounts:
        """n_c <= min(n_s1, n_s2) <= max(n_s1, n_s2) <= n_pulses."""
        if self.n_c > min(self.n_s1, self.n_s2):
            raise ValueError(
                f"n_c ({self.n_c}) exceeds min(n_s1, n_s2) ({min(self.n_s1, self.n_s2)})"
            )
        if max(self.n_s1, self.n_s2) > self.n_pulses:
            raise ValueError(
                f"single counts exceed n_pulses ({max(self.n_s1, self.n_s2)} > {self.n_pulses})"
            )
        return self
