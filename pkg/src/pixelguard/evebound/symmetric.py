"""Closed-form bound for balanced pixels with a single faked-state strategy.

Everything depends on the coincidence ratio r = p_c / p_s^2. Honest
Poissonian light gives r = 1. An attacker who wants to reproduce p_s and
p_c can at best reach

    I_E,max = sqrt(p_E) (sqrt(p_c) - p_s) / (p_s (1 - sqrt(p_E)))
            = sqrt(p_E) / (1 - sqrt(p_E)) * (sqrt(r) - 1),

and for r >= 1 / p_E she can attack every pulse.
"""

from __future__ import annotations

import math

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import validate_probability
from pixelguard.constants import FEASIBILITY_TOLERANCE, Regime
from pixelguard.evebound._common import (
    check_coincidence_logic,
    infeasible_bound,
    stats_residual,
)
from pixelguard.exceptions import InfeasibleStatsError, NoDetectionsError
from pixelguard.models.attack import AttackStrategy, StrategyComponent
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.stats import DetectionStats
from pixelguard.types import Diagnostics

logger = get_logger("evebound.symmetric")


def ratio_r(p_s: float, p_c: float) -> float:
    """Coincidence ratio ``p_c / p_s^2``.

    Raises:
        NoDetectionsError: If p_s is zero.
        ValidationError: If an input is not a probability.
    """
    validate_probability("p_s", p_s)
    validate_probability("p_c", p_c)
    if p_s == 0.0:
        raise NoDetectionsError("Coincidence ratio is undefined without single clicks")
    return p_c / (p_s * p_s)


def symmetric_optimum(p_e: float, p_s: float, p_c: float) -> AttackStrategy:
    """Attack reaching the closed-form bound.

    p_B = sqrt(p_c), p_d = sqrt(p_c / p_E) and
    p_a = (sqrt(p_c) - p_s) / (sqrt(p_c) (1 - sqrt(p_E))).

    Raises:
        InfeasibleStatsError: If a component leaves [0, 1].
    """
    _check_inputs(p_e, p_s, p_c)
    if p_c == 0.0:
        raise InfeasibleStatsError("Closed-form optimum needs coincidences", p_s=p_s, p_c=0.0)

    root_c = math.sqrt(p_c)
    root_e = math.sqrt(p_e)
    p_b = root_c
    p_d = math.sqrt(p_c / p_e)
    p_a = (root_c - p_s) / (root_c * (1.0 - root_e))

    for name, value in (("p_a", p_a), ("p_b", p_b), ("p_d", p_d)):
        if value < -FEASIBILITY_TOLERANCE or value > 1.0 + FEASIBILITY_TOLERANCE:
            raise InfeasibleStatsError(
                "Closed-form optimum is not a valid attack",
                component=name,
                value=value,
                p_e=p_e,
                p_s=p_s,
                p_c=p_c,
            )

    return AttackStrategy.single(_unit(p_a), _unit(p_b), _unit(p_d), _unit(p_d))


def symmetric_bound(p_e: float, p_s: float, p_c: float) -> EveInfoBound:
    """Maximum information per raw-key bit for balanced pixels.

    Args:
        p_e: Faked-state detectability, in (0, 1).
        p_s: Single-click probability of either pixel, in (0, 1].
        p_c: Coincidence probability, in [0, 1].

    Returns:
        EveInfoBound. ``value`` is 0 for r <= 1, 1 for r >= 1 / p_E and the
        closed form in between; ``diagnostics`` carries r and the unclamped
        closed form.

    Raises:
        NoDetectionsError: If p_s is zero.
        ValidationError: If an input is not a probability.
    """
    _check_inputs(p_e, p_s, p_c)
    r = ratio_r(p_s, p_c)
    stats = DetectionStats.model_construct(p_s1=p_s, p_s2=p_s, p_c=p_c)
    diagnostics: Diagnostics = {"ratio": r}

    try:
        check_coincidence_logic(stats)
    except InfeasibleStatsError as error:
        logger.warning(f"Symmetric bound on infeasible statistics: {error}")
        return infeasible_bound({**diagnostics, "reason": error.reason})

    if r <= 1.0:
        logger.debug(f"No attack evidence (r={r:.6g})")
        return EveInfoBound(
            value=0.0,
            regime=Regime.NO_ATTACK_EVIDENCE,
            diagnostics={**diagnostics, "model_mismatch": r < 1.0},
        )

    root_e = math.sqrt(p_e)
    unclamped = root_e * (math.sqrt(p_c) - p_s) / (p_s * (1.0 - root_e))
    diagnostics["unclamped_value"] = unclamped

    if r >= 1.0 / p_e:
        optimum = _full_attack(p_e, p_s, p_c, r)
        logger.debug(f"Full attack possible (r={r:.6g}, 1/p_E={1.0 / p_e:.6g})")
        return EveInfoBound(
            value=1.0,
            regime=Regime.FULL_ATTACK,
            optimum=optimum,
            residuals=stats_residual(optimum, p_e, 0.0, stats),
            diagnostics=diagnostics,
        )

    try:
        optimum = symmetric_optimum(p_e, p_s, p_c)
    except InfeasibleStatsError as error:
        logger.warning(f"Symmetric bound on infeasible statistics: {error}")
        return infeasible_bound({**diagnostics, "reason": error.reason})

    return EveInfoBound(
        value=_unit(unclamped),
        regime=Regime.PARTIAL_ATTACK,
        optimum=optimum,
        residuals=stats_residual(optimum, p_e, 0.0, stats),
        diagnostics=diagnostics,
    )


def _full_attack(p_e: float, p_s: float, p_c: float, r: float) -> AttackStrategy:
    """Attack on every pulse reproducing (p_s, p_s, p_c).

    A fraction w = 1 / (r p_E) of the faked states clicks both pixels with
    p_c / p_s, the rest never clicks.
    """
    click = _unit(p_c / p_s)
    weight = _unit(1.0 / (r * p_e))
    if weight >= 1.0:
        return AttackStrategy.single(1.0, 0.0, click, click)
    return AttackStrategy(
        p_a=1.0,
        p_b=0.0,
        strategies=[
            StrategyComponent(weight=weight, p_d1=click, p_d2=click),
            StrategyComponent(weight=1.0 - weight, p_d1=0.0, p_d2=0.0),
        ],
    )


def _check_inputs(p_e: float, p_s: float, p_c: float) -> None:
    validate_probability("p_e", p_e, open_low=True, open_high=True)
    validate_probability("p_s", p_s)
    validate_probability("p_c", p_c)


def _unit(value: float) -> float:
    return min(1.0, max(0.0, value))
