"""Attack strategy models."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pixelguard.constants import WEIGHT_SUM_TOLERANCE


class StrategyComponent(BaseModel):
    """One faked-state strategy and the weight Eve gives it."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    weight: float = Field(ge=0.0, le=1.0)
    p_d1: float = Field(ge=0.0, le=1.0, description="Faked-state click probability of pixel 1")
    p_d2: float = Field(ge=0.0, le=1.0, description="Faked-state click probability of pixel 2")


class AttackStrategy(BaseModel):
    """Eve's full parameterisation of a blinding attack.

    Pixel ordering: every strategy must favour the same pixel; strategies
    with equal click probabilities are compatible with either orientation.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    p_a: float = Field(ge=0.0, le=1.0, description="Probability that Eve attacks a pulse")
    p_b: float = Field(ge=0.0, le=1.0, description="Honest average per-pixel click probability")
    strategies: list[StrategyComponent] = Field(min_length=1)

    @model_validator(mode="after")
    def check_weights_and_ordering(self) -> AttackStrategy:
        """Weights sum to one; all strategies share the sign of p_d1 - p_d2."""
        total = math.fsum(s.weight for s in self.strategies)
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValueError(f"strategy weights must sum to 1 (got {total!r})")

        signs = {
            math.copysign(1.0, s.p_d1 - s.p_d2) for s in self.strategies if s.p_d1 != s.p_d2
        }
        if len(signs) > 1:
            raise ValueError("strategies favour different pixels (ordering constraint)")
        return self

    def mirrored(self) -> AttackStrategy:
        """The same attack with the pixel labels exchanged."""
        return AttackStrategy(
            p_a=self.p_a,
            p_b=self.p_b,
            strategies=[
                StrategyComponent(weight=s.weight, p_d1=s.p_d2, p_d2=s.p_d1)
                for s in self.strategies
            ],
        )

    @classmethod
    def single(cls, p_a: float, p_b: float, p_d1: float, p_d2: float) -> AttackStrategy:
        """Attack with a single faked-state strategy."""
        return cls(
            p_a=p_a,
            p_b=p_b,
            strategies=[StrategyComponent(weight=1.0, p_d1=p_d1, p_d2=p_d2)],
        )
