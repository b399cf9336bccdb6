"""Monte Carlo simulation of detection sessions under an attack.

Pulses are processed in chunks. Chunk ``i`` draws from its own Philox
stream seeded with ``SeedSequence(seed, spawn_key=(i,))``, so a session is
reproducible from its seed however many workers share the chunks.

Two samplers are available. ``BERNOULLI`` draws every pulse's decisions
(attack, detectable faked state, strategy, pixel clicks) explicitly.
``MULTINOMIAL`` draws the per-chunk counts of the 4 L + 5 outcome
classes at once, which is what makes day-long sessions at GHz rates
tractable. The two agree in distribution, not sample by sample.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import validate_probability
from pixelguard.constants import (
    MULTINOMIAL_SHARDS,
    MULTINOMIAL_THRESHOLD,
    SIMULATION_CHUNK_SIZE,
    SimulationMethod,
)
from pixelguard.detection import honest_pixel_prob
from pixelguard.exceptions import ValidationError
from pixelguard.models.attack import AttackStrategy
from pixelguard.models.params import SystemParams
from pixelguard.models.simulation import SimOutcome
from pixelguard.models.stats import ClickCounts, DetectionStats
from pixelguard.types import FloatArray

logger = get_logger("montecarlo")


@dataclass(frozen=True)
class _Tally:
    """Integer outcome of a chunk; chunks combine by addition."""

    n_pulses: int = 0
    n_s1: int = 0
    n_s2: int = 0
    n_c: int = 0
    n_eve_known: int = 0
    n_eve_pulses: int = 0

    def __add__(self, other: _Tally) -> _Tally:
        return _Tally(
            n_pulses=self.n_pulses + other.n_pulses,
            n_s1=self.n_s1 + other.n_s1,
            n_s2=self.n_s2 + other.n_s2,
            n_c=self.n_c + other.n_c,
            n_eve_known=self.n_eve_known + other.n_eve_known,
            n_eve_pulses=self.n_eve_pulses + other.n_eve_pulses,
        )


@dataclass(frozen=True)
class _Session:
    p_a: float
    p_e: float
    honest_1: float
    honest_2: float
    weights: FloatArray = field(repr=False)
    clicks_1: FloatArray = field(repr=False)
    clicks_2: FloatArray = field(repr=False)

    @classmethod
    def build(cls, strategy: AttackStrategy, p_e: float, alpha: float) -> _Session:
        weights = np.array([s.weight for s in strategy.strategies], dtype=np.float64)
        return cls(
            p_a=strategy.p_a,
            p_e=p_e,
            honest_1=min(1.0, (1.0 + alpha) * strategy.p_b),
            honest_2=(1.0 - alpha) * strategy.p_b,
            weights=weights / weights.sum(),
            clicks_1=np.array([s.p_d1 for s in strategy.strategies], dtype=np.float64),
            clicks_2=np.array([s.p_d2 for s in strategy.strategies], dtype=np.float64),
        )

    def bernoulli(self, rng: np.random.Generator, size: int) -> _Tally:
        attacked = rng.random(size) < self.p_a
        faked = attacked & (rng.random(size) < self.p_e)
        choice = rng.choice(self.weights.size, size=size, p=self.weights)

        prob_1 = np.where(faked, self.clicks_1[choice], np.where(attacked, 0.0, self.honest_1))
        prob_2 = np.where(faked, self.clicks_2[choice], np.where(attacked, 0.0, self.honest_2))
        click_1 = rng.random(size) < prob_1
        click_2 = rng.random(size) < prob_2

        eve_1 = click_1 & faked
        eve_2 = click_2 & faked
        return _Tally(
            n_pulses=size,
            n_s1=int(click_1.sum()),
            n_s2=int(click_2.sum()),
            n_c=int((click_1 & click_2).sum()),
            n_eve_known=int(eve_1.sum() + eve_2.sum()),
            n_eve_pulses=int((eve_1 | eve_2).sum()),
        )

    def multinomial(self, rng: np.random.Generator, size: int) -> _Tally:
        # per faked strategy and for the honest pulses: (both, only 1, only 2, none)
        fake = self.p_a * self.p_e * self.weights
        d1, d2 = self.clicks_1, self.clicks_2
        eve = np.stack(
            [fake * d1 * d2, fake * d1 * (1 - d2), fake * (1 - d1) * d2, fake * (1 - d1) * (1 - d2)],
            axis=1,
        )
        h1, h2 = self.honest_1, self.honest_2
        honest = (1.0 - self.p_a) * np.array(
            [h1 * h2, h1 * (1 - h2), (1 - h1) * h2, (1 - h1) * (1 - h2)]
        )
        blind = np.array([self.p_a * (1.0 - self.p_e)])

        probs = np.clip(np.concatenate([eve.ravel(), honest, blind]), 0.0, None)
        drawn = rng.multinomial(size, probs / probs.sum())
        eve_counts = drawn[: eve.size].reshape(eve.shape).sum(axis=0)
        honest_counts = drawn[eve.size : eve.size + 4]

        both, only_1, only_2 = (int(eve_counts[i] + honest_counts[i]) for i in range(3))
        return _Tally(
            n_pulses=size,
            n_s1=both + only_1,
            n_s2=both + only_2,
            n_c=both,
            n_eve_known=int(2 * eve_counts[0] + eve_counts[1] + eve_counts[2]),
            n_eve_pulses=int(eve_counts[:3].sum()),
        )


def simulate(
    strategy: AttackStrategy,
    p_e: float,
    alpha: float,
    n_pulses: int,
    seed: int,
    *,
    method: SimulationMethod = SimulationMethod.AUTO,
    workers: int = 1,
) -> SimOutcome:
    """Simulate a session of ``n_pulses`` pulses under an attack.

    Args:
        strategy: Eve's attack; ``p_b`` sets the honest click probability.
        p_e: Faked-state detectability.
        alpha: Pixel efficiency mismatch.
        n_pulses: Number of pulses, at least 1.
        seed: Non-negative master seed.
        method: Sampler; ``AUTO`` switches to multinomial counts above
            ``MULTINOMIAL_THRESHOLD`` pulses.
        workers: Threads sharing the chunks. Does not change the result.

    Returns:
        SimOutcome with the counts and Eve's ground-truth knowledge.

    Raises:
        ValidationError: If an argument is outside its range.
    """
    validate_probability("p_e", p_e)
    if math.isnan(alpha) or not 0.0 <= alpha < 1.0:
        raise ValidationError(f"alpha must be in [0, 1) (got {alpha})")
    if n_pulses < 1:
        raise ValidationError(f"n_pulses must be at least 1 (got {n_pulses})")
    if seed < 0:
        raise ValidationError(f"seed must be non-negative (got {seed})")
    if workers < 1:
        raise ValidationError(f"workers must be at least 1 (got {workers})")

    if method is SimulationMethod.AUTO:
        method = (
            SimulationMethod.MULTINOMIAL
            if n_pulses > MULTINOMIAL_THRESHOLD
            else SimulationMethod.BERNOULLI
        )
    session = _Session.build(strategy, p_e, alpha)
    sizes = _chunk_sizes(n_pulses, method)

    def run(index: int) -> _Tally:
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,)))
        )
        if method is SimulationMethod.MULTINOMIAL:
            return session.multinomial(rng, sizes[index])
        return session.bernoulli(rng, sizes[index])

    if workers == 1:
        tallies = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(run, range(len(sizes))))
    total = sum(tallies, _Tally())

    counts = ClickCounts(
        n_pulses=total.n_pulses,
        n_s1=total.n_s1,
        n_s2=total.n_s2,
        n_c=total.n_c,
    )
    clicks = total.n_s1 + total.n_s2
    detection_pulses = clicks - total.n_c
    logger.info(
        f"Simulated {n_pulses} pulses ({method}, {len(sizes)} chunks): "
        f"n_s1={total.n_s1}, n_s2={total.n_s2}, n_c={total.n_c}"
    )
    return SimOutcome(
        counts=counts,
        n_eve_known=total.n_eve_known,
        true_eve_info=total.n_eve_known / clicks if clicks else 0.0,
        n_eve_pulses=total.n_eve_pulses,
        n_detection_pulses=detection_pulses,
        true_eve_info_events=total.n_eve_pulses / detection_pulses if detection_pulses else 0.0,
        seed=seed,
    )


def empirical_stats(counts: ClickCounts) -> DetectionStats:
    """Observed frequencies of a session.

    Raises:
        ValidationError: If the session has no pulses.
    """
    if counts.n_pulses == 0:
        raise ValidationError("Cannot compute frequencies of an empty session")
    return DetectionStats(
        p_s1=counts.n_s1 / counts.n_pulses,
        p_s2=counts.n_s2 / counts.n_pulses,
        p_c=counts.n_c / counts.n_pulses,
    )


def honest_strategy(params: SystemParams) -> AttackStrategy:
    """The no-attack strategy for a scenario."""
    return AttackStrategy.single(0.0, honest_pixel_prob(params), 0.0, 0.0)


def _chunk_sizes(n_pulses: int, method: SimulationMethod) -> list[int]:
    """Chunk layout; depends on the pulse count and sampler only."""
    chunk = SIMULATION_CHUNK_SIZE
    if method is SimulationMethod.MULTINOMIAL:
        chunk = max(chunk, -(-n_pulses // MULTINOMIAL_SHARDS))
    full, rest = divmod(n_pulses, chunk)
    return [chunk] * full + ([rest] if rest else [])
