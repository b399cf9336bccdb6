"""Eavesdropper-information bound model."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pixelguard.constants import Regime
from pixelguard.models.attack import AttackStrategy


class EveInfoBound(BaseModel):
    """Maximum information per raw-key bit Eve can hold, with solver diagnostics."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    value: float = Field(ge=0.0, le=1.0, description="I_E,max per raw-key bit")
    regime: Regime
    optimum: AttackStrategy | None = Field(
        default=None,
        description="Maximising attack; absent when no attack is evidenced or stats are infeasible",
    )
    residuals: float = Field(
        default=0.0,
        ge=0.0,
        description="Largest absolute mismatch between expected_stats(optimum) and the input stats",
    )
    diagnostics: dict[str, float | int | bool | str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_optimum_presence(self) -> EveInfoBound:
        """Attack regimes carry a witness."""
        if self.regime in (Regime.PARTIAL_ATTACK, Regime.FULL_ATTACK) and self.optimum is None:
            raise ValueError(f"regime {self.regime} requires an optimum")
        return self

    @property
    def aborts(self) -> bool:
        """True when the statistics cannot be explained by the model."""
        return self.regime is Regime.INFEASIBLE_STATS
