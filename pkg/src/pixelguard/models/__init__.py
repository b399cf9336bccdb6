"""Pydantic models for pixelguard."""

from pixelguard.models.attack import AttackStrategy, StrategyComponent
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.params import FiniteKeyParams, SystemParams
from pixelguard.models.simulation import SimOutcome
from pixelguard.models.stats import ClickCounts, DetectionStats
from pixelguard.models.sweep import RatioRow, SweepRow

__all__ = [
    # Attack
    "AttackStrategy",
    "StrategyComponent",
    # Bound
    "EveInfoBound",
    # Params
    "FiniteKeyParams",
    "SystemParams",
    # Simulation
    "SimOutcome",
    # Stats
    "ClickCounts",
    "DetectionStats",
    # Sweep
    "RatioRow",
    "SweepRow",
]
