"""General bound for mismatched pixels and mixed faked-state strategies.

Write u = 1 - p_a for the honest fraction of pulses, A = p_a p_E for the
detectable faked states and h = u p_B for the honest click weight. With
the honest part fixed, Eve has to supply

    e1 = p_s1 - (1 + alpha) h
    e2 = p_s2 - (1 - alpha) h
    ec = p_c  - (1 - alpha^2) h^2 / u

as A times the first and joint moments (m1, m2, mc) of a distribution of
click pairs (p_d1, p_d2) with p_d1 <= p_d2. Those moments are reachable,
with two strategies, exactly when

    0 <= m1 <= m2 <= 1   and   m1^2 / (1 - m2 + m1) <= mc <= m1,

so mixtures of more strategies never do better. Eve's share of the clicks
is 1 - 2h / (p_s1 + p_s2), which makes the bound a search for the
smallest admissible h. For fixed p_a the admissible set in h is cut out by
linear, quadratic and one cubic constraint, so its minimum sits at 0 or at
a root; the remaining one-dimensional problem in p_a is solved on a grid
and refined with a bounded scalar minimiser.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import validate_positive, validate_probability
from pixelguard.constants import (
    ATTACK_EDGE_DECADES,
    ATTACK_GRID_POINTS,
    FEASIBILITY_TOLERANCE,
    HONEST_MATCH_TOLERANCE,
    IMBALANCE_SIGMAS,
    REFINE_XATOL,
    REFINED_MAXIMA,
    ObjectiveConvention,
    PixelOrientation,
    Regime,
)
from pixelguard.evebound._common import (
    check_coincidence_logic,
    regime_for,
    resolve_orientation,
    stats_residual,
    unexplained_bound,
)
from pixelguard.exceptions import NoDetectionsError, PixelImbalanceError, ValidationError
from pixelguard.models.attack import AttackStrategy, StrategyComponent
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.stats import DetectionStats
from pixelguard.types import Diagnostics

logger = get_logger("evebound.general")

_INFEASIBLE = -math.inf


@dataclass(frozen=True)
class _Problem:
    """Statistics in the frame where pixel 2 is favoured by the faked states."""

    s1: float
    s2: float
    c: float
    alpha: float
    p_e: float
    convention: ObjectiveConvention

    @property
    def clicks(self) -> float:
        return self.s1 + self.s2

    @property
    def events(self) -> float:
        return self.s1 + self.s2 - self.c

    def curvature(self, p_a: float) -> float:
        """k with ec = p_c - k h^2."""
        u = 1.0 - p_a
        return (1.0 - self.alpha * self.alpha) / u if u > 0.0 else 0.0

    def value(self, p_a: float, h: float) -> float:
        """Eve's share of the detections for honest click weight h."""
        if self.convention is ObjectiveConvention.CLICKS:
            share = 1.0 - 2.0 * h / self.clicks
        else:
            honest = 2.0 * h - self.curvature(p_a) * h * h
            share = 1.0 - honest / self.events if self.events > 0.0 else 0.0
        return min(1.0, max(0.0, share))

    def feasible(self, p_a: float, h: float) -> bool:
        """Whether (p_a, h) leaves Eve a reachable set of moments."""
        s1, s2, c, alpha = self.s1, self.s2, self.c, self.alpha
        attacked = p_a * self.p_e
        k = self.curvature(p_a)
        if k == 0.0 and h > 0.0:
            return False

        e1 = s1 - (1.0 + alpha) * h
        e2 = s2 - (1.0 - alpha) * h
        kh2 = k * h * h
        ec = c - kh2
        spread = attacked - e2 + e1
        mag_1 = s1 + (1.0 + alpha) * h
        mag_c = c + kh2

        checks = (
            (e1, mag_1),
            (e2 - e1, s1 + s2 + 2.0 * abs(alpha) * h),
            (attacked - e2, attacked + s2 + (1.0 - alpha) * h),
            (ec, mag_c),
            (e1 - ec, mag_1 + mag_c),
            (ec * spread - e1 * e1, mag_c * (attacked + s1 + s2 + 2.0 * h) + mag_1 * mag_1),
        )
        return all(lhs >= -FEASIBILITY_TOLERANCE * max(mag, 1e-300) for lhs, mag in checks)

    def minimal_honest(self, p_a: float) -> float | None:
        """Smallest admissible honest click weight h for a given p_a."""
        u = 1.0 - p_a
        for h in sorted(self._candidates(p_a)):
            if 0.0 <= h <= u and self.feasible(p_a, h):
                return h
        return None

    def _candidates(self, p_a: float) -> Iterable[float]:
        s1, s2, c, alpha = self.s1, self.s2, self.c, self.alpha
        u = 1.0 - p_a
        attacked = p_a * self.p_e
        k = self.curvature(p_a)

        yield 0.0
        yield u
        yield s1 / (1.0 + alpha)
        yield (s2 - attacked) / (1.0 - alpha)
        if alpha != 0.0:
            yield (s1 - s2) / (2.0 * alpha)
        if k > 0.0:
            yield math.sqrt(c / k)
            yield from _quadratic_roots(k, -(1.0 + alpha), s1 - c)
            spread = attacked + s1 - s2
            cubic = (
                2.0 * alpha * k,
                -k * spread - (1.0 + alpha) ** 2,
                -2.0 * alpha * c + 2.0 * s1 * (1.0 + alpha),
                c * spread - s1 * s1,
            )
            yield from _cubic_roots(cubic, scale=max(s1, s2))

    def witness(self, p_a: float, h: float) -> AttackStrategy:
        """Attack with at most two strategies reproducing the statistics."""
        u = 1.0 - p_a
        attacked = p_a * self.p_e
        p_b = min(1.0, h / u) if u > 0.0 else 0.0
        e1 = self.s1 - (1.0 + self.alpha) * h
        e2 = self.s2 - (1.0 - self.alpha) * h
        ec = self.c - self.curvature(p_a) * h * h

        m1 = _clip(e1 / attacked, 0.0, 1.0)
        m2 = _clip(e2 / attacked, m1, 1.0)
        spread = 1.0 - m2 + m1
        mc_low = m1 * m1 / spread if spread > 0.0 else 0.0
        mc = _clip(ec / attacked, mc_low, m1)

        if m1 <= 0.0:
            return AttackStrategy.single(p_a, p_b, 0.0, m2)

        both = _clip(mc / m1, m1 / spread, 1.0)
        weight = min(1.0, m1 / both)
        if weight >= 1.0:
            return AttackStrategy.single(p_a, p_b, both, both)
        second = _clip((m2 - m1) / (1.0 - weight), 0.0, 1.0)
        return AttackStrategy(
            p_a=p_a,
            p_b=p_b,
            strategies=[
                StrategyComponent(weight=weight, p_d1=both, p_d2=both),
                StrategyComponent(weight=1.0 - weight, p_d1=0.0, p_d2=second),
            ],
        )

    def honest_match(self) -> bool:
        """Whether the statistics are exactly those of an unattacked link."""
        p_b = 0.5 * (self.s1 + self.s2)
        expected = (
            ((1.0 + self.alpha) * p_b, self.s1),
            ((1.0 - self.alpha) * p_b, self.s2),
            ((1.0 - self.alpha * self.alpha) * p_b * p_b, self.c),
        )
        return all(
            abs(model - observed) <= HONEST_MATCH_TOLERANCE * max(model, observed, 1e-300)
            for model, observed in expected
        )


def default_imbalance_threshold(stats: DetectionStats, alpha: float, n_pulses: int) -> float:
    """Largest |p_s1 - p_s2| accepted before aborting.

    The mismatch-induced difference 2 alpha p_B plus ``IMBALANCE_SIGMAS``
    standard deviations of the observed difference over ``n_pulses``.
    """
    validate_positive("n_pulses", n_pulses)
    s1, s2, c = stats.p_s1, stats.p_s2, stats.p_c
    p_b = 0.5 * (s1 + s2)
    variance = (s1 * (1.0 - s1) + s2 * (1.0 - s2) - 2.0 * (c - s1 * s2)) / n_pulses
    return 2.0 * alpha * p_b + IMBALANCE_SIGMAS * math.sqrt(max(variance, 0.0))


def check_imbalance(stats: DetectionStats, imbalance_threshold: float | None) -> None:
    """Abort when the pixel rates differ by more than the threshold.

    Raises:
        PixelImbalanceError: If |p_s1 - p_s2| exceeds a set threshold.
    """
    if imbalance_threshold is None:
        return
    imbalance = abs(stats.p_s1 - stats.p_s2)
    if imbalance > imbalance_threshold:
        raise PixelImbalanceError(
            "Pixel single rates differ beyond the accepted threshold",
            imbalance=imbalance,
            threshold=imbalance_threshold,
        )


def general_bound(
    p_e: float,
    stats: DetectionStats,
    alpha: float,
    imbalance_threshold: float | None = None,
    *,
    convention: ObjectiveConvention = ObjectiveConvention.CLICKS,
    orientation: PixelOrientation = PixelOrientation.PIXEL2_HIGHER,
) -> EveInfoBound:
    """Maximum information per raw-key bit for arbitrary pixel statistics.

    Args:
        p_e: Faked-state detectability, in (0, 1).
        stats: Observed (or confidence-corner) statistics.
        alpha: Pixel efficiency mismatch, in [0, 1).
        imbalance_threshold: Abort when |p_s1 - p_s2| exceeds this value;
            None disables the check.
        convention: How Eve's known detections are counted.
        orientation: Which pixel Eve's strategies favour.

    Returns:
        EveInfoBound with a witness of at most two strategies.

    Raises:
        PixelImbalanceError: If the imbalance check fails.
        InfeasibleStatsError: If no attack or honest assignment reproduces
            the statistics.
        NoDetectionsError: If there are no single clicks.
    """
    validate_probability("p_e", p_e, open_low=True, open_high=True)
    _check_alpha(alpha)
    check_coincidence_logic(stats)
    check_imbalance(stats, imbalance_threshold)
    if stats.p_s1 + stats.p_s2 == 0.0:
        raise NoDetectionsError("No single clicks to bound")

    orientation = resolve_orientation(stats, alpha, orientation)
    mirrored = orientation is PixelOrientation.PIXEL1_HIGHER
    problem = _Problem(
        s1=stats.p_s2 if mirrored else stats.p_s1,
        s2=stats.p_s1 if mirrored else stats.p_s2,
        c=stats.p_c,
        alpha=-alpha if mirrored else alpha,
        p_e=p_e,
        convention=convention,
    )
    diagnostics: Diagnostics = {
        "objective": str(convention),
        "orientation": str(orientation),
        "model_mismatch": False,
    }

    if problem.feasible(1.0, 0.0):
        logger.debug("Statistics admit an attack on every pulse")
        return _bound(problem, 1.0, 0.0, stats, alpha, mirrored, diagnostics)

    # Within the feasibility tolerance a vanishing attack still "fits" exact
    # honest statistics; those are answered before the search.
    if problem.honest_match():
        logger.debug("Statistics match an unattacked link")
        return EveInfoBound(value=0.0, regime=Regime.NO_ATTACK_EVIDENCE, diagnostics=diagnostics)

    best = _search(problem)
    if best is None:
        logger.warning(f"No admissible attack for {stats!r}")
        return unexplained_bound(stats, diagnostics)

    p_a, h = best
    return _bound(problem, p_a, h, stats, alpha, mirrored, diagnostics)


def _bound(
    problem: _Problem,
    p_a: float,
    h: float,
    stats: DetectionStats,
    alpha: float,
    mirrored: bool,
    diagnostics: Diagnostics,
) -> EveInfoBound:
    value = problem.value(p_a, h)
    regime = regime_for(value)
    diagnostics = {**diagnostics, "p_a": p_a, "honest_click_weight": h}
    if regime is Regime.NO_ATTACK_EVIDENCE:
        return EveInfoBound(value=0.0, regime=regime, diagnostics=diagnostics)

    optimum = problem.witness(p_a, h)
    if mirrored:
        optimum = optimum.mirrored()
    residuals = stats_residual(optimum, problem.p_e, alpha, stats)
    logger.debug(f"General bound {value:.6g} at p_a={p_a:.6g} (residual {residuals:.3g})")
    return EveInfoBound(
        value=value,
        regime=regime,
        optimum=optimum,
        residuals=residuals,
        diagnostics=diagnostics,
    )


def _search(problem: _Problem) -> tuple[float, float] | None:
    """Best (p_a, h) over 0 < p_a < 1, or None when nothing is admissible."""
    grid = _attack_grid()
    values = np.array([_score(problem, p_a) for p_a in grid])
    if not np.isfinite(values).any():
        return None

    best_p = float(grid[int(np.argmax(values))])
    best_value = float(values.max())

    for index in _local_maxima(values)[:REFINED_MAXIMA]:
        low = float(grid[index - 1]) if index > 0 else 0.0
        high = float(grid[index + 1]) if index + 1 < grid.size else 1.0
        result = minimize_scalar(
            _penalised,
            args=(problem,),
            bounds=(low, high),
            method="bounded",
            options={"xatol": REFINE_XATOL},
        )
        p_a = float(result.x)
        refined = _score(problem, p_a)
        if refined > best_value:
            best_p, best_value = p_a, refined

    h = problem.minimal_honest(best_p)
    return None if h is None else (best_p, h)


def _score(problem: _Problem, p_a: float) -> float:
    if not 0.0 < p_a < 1.0:
        return _INFEASIBLE
    h = problem.minimal_honest(p_a)
    return _INFEASIBLE if h is None else problem.value(p_a, h)


def _penalised(p_a: float, problem: _Problem) -> float:
    score = _score(problem, p_a)
    return -score if math.isfinite(score) else 2.0


def _attack_grid() -> np.ndarray:
    low, high = ATTACK_EDGE_DECADES
    edges = np.logspace(-high, -low, high - low + 1)
    grid = np.concatenate(
        [np.linspace(0.0, 1.0, ATTACK_GRID_POINTS)[1:-1], edges, 1.0 - edges]
    )
    return np.unique(grid)


def _local_maxima(values: np.ndarray) -> list[int]:
    """Indices of finite local maxima, best first."""
    padded = np.concatenate([[_INFEASIBLE], values, [_INFEASIBLE]])
    peaks = [
        i - 1
        for i in range(1, padded.size - 1)
        if math.isfinite(padded[i]) and padded[i] >= padded[i - 1] and padded[i] >= padded[i + 1]
    ]
    return sorted(peaks, key=lambda i: -values[i])


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of a x^2 + b x + c without cancellation."""
    if a == 0.0:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc < -FEASIBILITY_TOLERANCE * b * b:
            return []
        disc = 0.0
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        return [0.0]
    return [q / a, c / q]


def _cubic_roots(coefficients: tuple[float, float, float, float], scale: float) -> list[float]:
    """Real roots of a cubic, solved in units of ``scale`` then polished."""
    if scale <= 0.0:
        return []
    scaled = [coef * scale**power for coef, power in zip(coefficients, (3, 2, 1, 0), strict=True)]
    if not any(scaled):
        return []
    roots = np.roots(scaled)
    real = roots[np.abs(roots.imag) <= 1e-7 * np.maximum(np.abs(roots.real), 1.0)].real

    polished = []
    derivative = np.polyder(np.array(coefficients))
    for root in real:
        x = float(root) * scale
        for _ in range(3):
            slope = float(np.polyval(derivative, x))
            if slope == 0.0:
                break
            x -= float(np.polyval(coefficients, x)) / slope
        polished.extend((float(root) * scale, x))
    return polished


def _clip(value: float, low: float, high: float) -> float:
    return min(high, max(low, value))


def _check_alpha(alpha: float) -> None:
    if math.isnan(alpha) or not 0.0 <= alpha < 1.0:
        raise ValidationError(f"alpha must be in [0, 1) (got {alpha})")
