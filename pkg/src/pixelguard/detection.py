"""Forward detection model: from an attack to expected click statistics.

A pulse is attacked with probability ``p_a``. Attacked pulses produce a
detectable faked state with probability ``p_E`` (Alice's pulse non-empty
and bases matching); pixel ``i`` then clicks with ``p_di`` of the chosen
strategy. Unattacked pulses click pixel 1 with ``(1 + alpha) p_B`` and
pixel 2 with ``(1 - alpha) p_B``. Pixels are independent, dark counts and
afterpulsing are not modelled.
"""

from __future__ import annotations

import math

from pixelguard.constants import HONEST_ROUTING_FACTOR
from pixelguard.models.attack import AttackStrategy
from pixelguard.models.params import SystemParams
from pixelguard.models.stats import DetectionStats


def channel_transmission(params: SystemParams) -> float:
    """Alice-Bob transmission ``10^(-loss * distance / 10)``."""
    return 10.0 ** (-params.loss_db_per_km * params.distance_km / 10.0)


def compute_p_e(params: SystemParams) -> float:
    """Probability that a faked state is detectable by Bob.

    ``p_E = (1 - exp(-mu * t_eve)) * q``.
    """
    return -math.expm1(-params.mu * params.t_eve) * params.q


def honest_pixel_prob(params: SystemParams) -> float:
    """Average honest click probability of one pixel.

    Uses ``p_b_override`` when set; otherwise ``1 - exp(-eta * mu * t / 4)``,
    i.e. half the light reaches each detector and half of that each pixel.
    """
    if params.p_b_override is not None:
        return params.p_b_override
    t = channel_transmission(params)
    return -math.expm1(-params.eta * params.mu * t * HONEST_ROUTING_FACTOR)


def expected_stats(strategy: AttackStrategy, p_e: float, alpha: float) -> DetectionStats:
    """Expected single and coincidence probabilities under an attack.

    Args:
        strategy: Eve's attack (the ordering constraint is checked when the
            strategy is built).
        p_e: Faked-state detectability p_E.
        alpha: Pixel efficiency mismatch.

    Returns:
        DetectionStats with the expected p_s1, p_s2 and p_c.
    """
    attacked = strategy.p_a * p_e
    honest = 1.0 - strategy.p_a
    p_b = strategy.p_b

    fake_1 = math.fsum(s.weight * s.p_d1 for s in strategy.strategies)
    fake_2 = math.fsum(s.weight * s.p_d2 for s in strategy.strategies)
    fake_c = math.fsum(s.weight * s.p_d1 * s.p_d2 for s in strategy.strategies)

    p_s1 = attacked * fake_1 + honest * (1.0 + alpha) * p_b
    p_s2 = attacked * fake_2 + honest * (1.0 - alpha) * p_b
    p_c = attacked * fake_c + honest * (1.0 - alpha * alpha) * p_b * p_b

    # p_c <= min(p_s1, p_s2) holds termwise; clip the last-ulp excess
    return DetectionStats(
        p_s1=_unit(p_s1),
        p_s2=_unit(p_s2),
        p_c=min(_unit(p_c), _unit(p_s1), _unit(p_s2)),
    )


def honest_stats(params: SystemParams) -> DetectionStats:
    """Expected statistics without an attack for the given scenario."""
    p_b = honest_pixel_prob(params)
    alpha = params.alpha
    return DetectionStats(
        p_s1=_unit((1.0 + alpha) * p_b),
        p_s2=_unit((1.0 - alpha) * p_b),
        p_c=_unit((1.0 - alpha * alpha) * p_b * p_b),
    )


def _unit(value: float) -> float:
    return min(1.0, max(0.0, value))
