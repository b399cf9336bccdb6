"""Helpers shared by the bound solvers."""

from __future__ import annotations

import math

from pixelguard.constants import ObjectiveConvention, PixelOrientation, Regime
from pixelguard.detection import expected_stats
from pixelguard.exceptions import InfeasibleStatsError
from pixelguard.models.attack import AttackStrategy
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.stats import DetectionStats
from pixelguard.types import Diagnostics

# values at or below this count as "no attack"
NO_ATTACK_VALUE = 1e-10


def eve_information(
    strategy: AttackStrategy,
    p_e: float,
    alpha: float,
    convention: ObjectiveConvention = ObjectiveConvention.CLICKS,
) -> float:
    """Fraction of Bob's detections known to Eve under a given attack.

    With ``CLICKS`` every faked-state click counts, both pixels summed, and
    is divided by the expected number of clicks p_s1 + p_s2. With
    ``EVENTS`` a faked-state coincidence counts once and the denominator is
    the probability of at least one click.
    """
    stats = expected_stats(strategy, p_e, alpha)
    attacked = strategy.p_a * p_e
    if convention is ObjectiveConvention.CLICKS:
        known = attacked * math.fsum(s.weight * (s.p_d1 + s.p_d2) for s in strategy.strategies)
        total = stats.p_s1 + stats.p_s2
    else:
        known = attacked * math.fsum(
            s.weight * (s.p_d1 + s.p_d2 - s.p_d1 * s.p_d2) for s in strategy.strategies
        )
        total = stats.detection_events
    if total <= 0.0:
        return 0.0
    return min(1.0, max(0.0, known / total))


def stats_residual(
    strategy: AttackStrategy,
    p_e: float,
    alpha: float,
    stats: DetectionStats,
) -> float:
    """Largest absolute mismatch between a witness's statistics and the target."""
    produced = expected_stats(strategy, p_e, alpha)
    return max(
        abs(produced.p_s1 - stats.p_s1),
        abs(produced.p_s2 - stats.p_s2),
        abs(produced.p_c - stats.p_c),
    )


def check_coincidence_logic(stats: DetectionStats) -> None:
    """Reject statistics where coincidences outnumber a pixel's clicks."""
    if stats.p_c > min(stats.p_s1, stats.p_s2):
        raise InfeasibleStatsError(
            "Coincidence probability exceeds a single-click probability",
            p_s1=stats.p_s1,
            p_s2=stats.p_s2,
            p_c=stats.p_c,
        )


def unexplained_bound(stats: DetectionStats, diagnostics: Diagnostics) -> EveInfoBound:
    """Bound for statistics no assignment of the model reproduces.

    Coincidences at or below the product of the single rates
    (sub-Poissonian-looking statistics) leave Eve nothing to gain and yield
    0 with the model-mismatch flag. Anything else is infeasible.
    """
    if stats.p_c <= stats.p_s1 * stats.p_s2:
        return EveInfoBound(
            value=0.0,
            regime=Regime.NO_ATTACK_EVIDENCE,
            diagnostics={**diagnostics, "model_mismatch": True},
        )
    raise InfeasibleStatsError(
        "No attack or honest assignment reproduces the statistics",
        p_s1=stats.p_s1,
        p_s2=stats.p_s2,
        p_c=stats.p_c,
    )


def infeasible_bound(diagnostics: Diagnostics) -> EveInfoBound:
    """Flagged bound: nothing can be certified, so Eve may know every bit."""
    return EveInfoBound(value=1.0, regime=Regime.INFEASIBLE_STATS, diagnostics=diagnostics)


def regime_for(value: float) -> Regime:
    """Regime of an attained (feasible) optimum."""
    if value <= NO_ATTACK_VALUE:
        return Regime.NO_ATTACK_EVIDENCE
    if value >= 1.0 - NO_ATTACK_VALUE:
        return Regime.FULL_ATTACK
    return Regime.PARTIAL_ATTACK


def resolve_orientation(
    stats: DetectionStats, alpha: float, orientation: PixelOrientation
) -> PixelOrientation:
    """Orientation to solve in; with equal efficiencies the busier pixel is the favoured one."""
    if alpha != 0.0 or stats.p_s1 == stats.p_s2:
        return orientation
    return PixelOrientation.PIXEL1_HIGHER if stats.p_s1 > stats.p_s2 else PixelOrientation.PIXEL2_HIGHER
