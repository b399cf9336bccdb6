"""Monte Carlo outcome model."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

from pixelguard.models.stats import ClickCounts


class SimOutcome(BaseModel):
    """Counts of one simulated session plus Eve's ground-truth knowledge."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    counts: ClickCounts
    n_eve_known: StrictInt = Field(ge=0, description="Clicks caused by faked states")
    true_eve_info: float = Field(ge=0.0, le=1.0)
    n_eve_pulses: StrictInt = Field(ge=0, description="Pulses with at least one faked-state click")
    n_detection_pulses: StrictInt = Field(ge=0, description="Pulses with at least one click")
    true_eve_info_events: float = Field(ge=0.0, le=1.0)
    seed: StrictInt

    @model_validator(mode="after")
    def check_consistency(self) -> SimOutcome:
        """Both information fractions follow from their count fields."""
        clicks = self.counts.n_s1 + self.counts.n_s2
        if self.n_eve_known > clicks:
            raise ValueError("n_eve_known exceeds the number of clicks")
        if self.n_eve_pulses > self.n_detection_pulses:
            raise ValueError("n_eve_pulses exceeds the number of detection pulses")
        if abs(self.true_eve_info - _fraction(self.n_eve_known, clicks)) > 1e-12:
            raise ValueError("true_eve_info is inconsistent with n_eve_known")
        if abs(self.true_eve_info_events - _fraction(self.n_eve_pulses, self.n_detection_pulses)) > 1e-12:
            raise ValueError("true_eve_info_events is inconsistent with n_eve_pulses")
        return self


def _fraction(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0
