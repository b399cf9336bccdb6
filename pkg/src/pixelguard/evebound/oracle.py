"""Exhaustive grid search over attack parameters.

Slow by construction; used to cross-check the analytic bounds. For every
grid choice of p_a, of all strategy weights but the last and of all
strategy click pairs but the last, the remaining unknowns (p_B and the
last pair) follow from the three statistics equations: the singles fix the
last pair linearly in p_B, and the coincidence equation becomes a
quadratic in p_B. Only exact solutions inside the parameter box count, so
the oracle never reports an attack that does not reproduce the statistics.

The fixed strategies are enumerated in blocks of at most
``ORACLE_BLOCK_ROWS`` rows, so memory stays bounded at any resolution;
running time still grows as the grid to the power of 3 * n_strategies - 2.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import validate_probability
from pixelguard.constants import (
    FEASIBILITY_TOLERANCE,
    HONEST_MATCH_TOLERANCE,
    MAX_ORACLE_RESOLUTION,
    MAX_ORACLE_STRATEGIES,
    ORACLE_BLOCK_ROWS,
    ObjectiveConvention,
    PixelOrientation,
    Regime,
)
from pixelguard.evebound._common import (
    regime_for,
    resolve_orientation,
    stats_residual,
    unexplained_bound,
)
from pixelguard.exceptions import ValidationError
from pixelguard.models.attack import AttackStrategy, StrategyComponent
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.stats import DetectionStats
from pixelguard.types import Diagnostics, Witness

logger = get_logger("evebound.oracle")

# candidates are (value, p_a, p_b, w_1, x_1, y_1, ..., w_n, x_n, y_n)


@dataclass(frozen=True)
class _Target:
    s1: float
    s2: float
    c: float
    alpha: float
    p_e: float
    convention: ObjectiveConvention


def brute_force_bound(
    p_e: float,
    stats: DetectionStats,
    alpha: float,
    grid_resolution: float,
    *,
    n_strategies: int | None = None,
    convention: ObjectiveConvention = ObjectiveConvention.CLICKS,
    orientation: PixelOrientation = PixelOrientation.PIXEL2_HIGHER,
    workers: int = 1,
) -> EveInfoBound:
    """Maximise Eve's information by enumerating a parameter grid.

    Args:
        p_e: Faked-state detectability, in (0, 1).
        stats: Statistics to reproduce.
        alpha: Pixel efficiency mismatch, in [0, 1).
        grid_resolution: Grid step, in (0, 0.1]; rounded to 1 / n.
        n_strategies: Number of faked-state strategies (1 to 3). None
            searches the (p_a, p_B, p_d) grid of a single strategy for
            balanced statistics (alpha = 0, p_s1 = p_s2) and two
            strategies otherwise.
        convention: How Eve's known detections are counted.
        orientation: Which pixel the strategies favour.
        workers: Threads sharing the attack-probability grid. The result
            does not depend on this number.

    Returns:
        EveInfoBound; a grid approximation from below of the true maximum.

    Raises:
        ValidationError: If an argument is outside its range.
        InfeasibleStatsError: If nothing on the grid reproduces the statistics.
    """
    validate_probability("p_e", p_e, open_low=True, open_high=True)
    if math.isnan(alpha) or not 0.0 <= alpha < 1.0:
        raise ValidationError(f"alpha must be in [0, 1) (got {alpha})")
    if not 0.0 < grid_resolution <= MAX_ORACLE_RESOLUTION:
        raise ValidationError(
            f"grid_resolution must be in (0, {MAX_ORACLE_RESOLUTION}] (got {grid_resolution})"
        )
    if n_strategies is None:
        n_strategies = 1 if alpha == 0.0 and stats.p_s1 == stats.p_s2 else 2
    if not 1 <= n_strategies <= MAX_ORACLE_STRATEGIES:
        raise ValidationError(
            f"n_strategies must be between 1 and {MAX_ORACLE_STRATEGIES} (got {n_strategies})"
        )
    if workers < 1:
        raise ValidationError(f"workers must be at least 1 (got {workers})")

    orientation = resolve_orientation(stats, alpha, orientation)
    diagnostics: Diagnostics = {
        "objective": str(convention),
        "orientation": str(orientation),
        "grid_resolution": grid_resolution,
        "n_strategies": n_strategies,
        "model_mismatch": False,
    }
    if stats.p_c > min(stats.p_s1, stats.p_s2):
        logger.warning("Coincidences exceed single clicks; nothing to search")
        return EveInfoBound(value=1.0, regime=Regime.INFEASIBLE_STATS, diagnostics=diagnostics)

    mirrored = orientation is PixelOrientation.PIXEL1_HIGHER
    target = _Target(
        s1=stats.p_s2 if mirrored else stats.p_s1,
        s2=stats.p_s1 if mirrored else stats.p_s2,
        c=stats.p_c,
        alpha=-alpha if mirrored else alpha,
        p_e=p_e,
        convention=convention,
    )
    steps = max(1, round(1.0 / grid_resolution))
    grid = np.linspace(0.0, 1.0, steps + 1)

    candidates: list[Witness] = []
    if _honest_match(target):
        candidates.append((0.0, 0.0, 0.5 * (target.s1 + target.s2), 1.0, 0.0, 0.0))
    full = _full_attack(target)
    if full is not None:
        candidates.append(full)

    n_fixed = n_strategies - 1
    weight_sets = _weight_sets(grid, n_fixed)
    shards = [list(grid[1:-1][i::workers]) for i in range(workers)]

    def search(shard: list[float]) -> Witness | None:
        return _search_shard(target, shard, grid, weight_sets)

    if workers == 1:
        results = [search(shards[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(search, shards))
    candidates.extend(result for result in results if result is not None)
    n_pairs = grid.size * (grid.size + 1) // 2
    diagnostics["grid_points"] = (steps - 1) * len(weight_sets) * n_pairs**n_fixed

    if not candidates:
        return unexplained_bound(stats, diagnostics)

    best = _best(candidates)
    value = best[0]
    regime = regime_for(value)
    if regime is Regime.NO_ATTACK_EVIDENCE:
        return EveInfoBound(value=0.0, regime=regime, diagnostics=diagnostics)

    optimum = _witness(best)
    if mirrored:
        optimum = optimum.mirrored()
    diagnostics["p_a"] = optimum.p_a
    logger.debug(f"Oracle bound {value:.6g} over {diagnostics['grid_points']} grid points")
    return EveInfoBound(
        value=value,
        regime=regime,
        optimum=optimum,
        residuals=stats_residual(optimum, p_e, alpha, stats),
        diagnostics=diagnostics,
    )


def _best(candidates: list[Witness]) -> Witness:
    """Largest value; ties go to the lexicographically smallest witness."""
    top = max(candidate[0] for candidate in candidates)
    return min(candidate for candidate in candidates if candidate[0] == top)


class _Fixed(NamedTuple):
    """All strategies but the last, one row per grid configuration."""

    weights: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    last: np.ndarray


def _search_shard(
    target: _Target, attack_probs: list[float], grid: np.ndarray, weight_sets: np.ndarray
) -> Witness | None:
    best: Witness | None = None
    for p_a in attack_probs:
        for fixed in _fixed_blocks(grid, weight_sets):
            found = _search_attack_prob(target, float(p_a), fixed)
            if found is not None and (best is None or _best([best, found]) == found):
                best = found
    return best


def _weight_sets(grid: np.ndarray, n_fixed: int) -> np.ndarray:
    """Grid weights of the fixed strategies, leaving a positive weight for the solved one."""
    if n_fixed == 0:
        return np.zeros((1, 0))
    weight_sets = np.array(list(itertools.product(grid[1:-1], repeat=n_fixed)))
    return weight_sets[weight_sets.sum(axis=1) < 1.0 - 0.5 * grid[1]]


def _fixed_blocks(grid: np.ndarray, weight_sets: np.ndarray) -> Iterator[_Fixed]:
    """Weights and ordered click pairs (x <= y) of the fixed strategies, in blocks.

    A block pairs a chunk of weight vectors with every ordered pair for the
    last fixed strategy; pairs of the other fixed strategies are looped over.
    """
    n_fixed = weight_sets.shape[1]
    if n_fixed == 0:
        yield _Fixed(np.zeros((1, 0)), np.zeros((1, 0)), np.zeros((1, 0)), np.ones(1))
        return

    i, j = np.triu_indices(grid.size)
    pair_x, pair_y = grid[i], grid[j]
    n_pairs = pair_x.size
    chunk_size = max(1, ORACLE_BLOCK_ROWS // n_pairs)

    for start in range(0, len(weight_sets), chunk_size):
        chunk = weight_sets[start : start + chunk_size]
        weights = np.repeat(chunk, n_pairs, axis=0)
        last = 1.0 - weights.sum(axis=1)
        tail_x = np.tile(pair_x, len(chunk))
        tail_y = np.tile(pair_y, len(chunk))
        for lead in itertools.product(range(n_pairs), repeat=n_fixed - 1):
            xs = np.column_stack([*(np.full(len(last), pair_x[k]) for k in lead), tail_x])
            ys = np.column_stack([*(np.full(len(last), pair_y[k]) for k in lead), tail_y])
            yield _Fixed(weights, xs, ys, last)


def _search_attack_prob(target: _Target, p_a: float, fixed: _Fixed) -> Witness | None:
    """Best exact solution for one attack probability."""
    s1, s2, c, alpha = target.s1, target.s2, target.c, target.alpha
    weights, xs, ys, last = fixed
    u = 1.0 - p_a
    attacked = p_a * target.p_e
    k1 = u * (1.0 + alpha)
    k2 = u * (1.0 - alpha)

    sum_x = (weights * xs).sum(axis=1)
    sum_y = (weights * ys).sum(axis=1)
    sum_xy = (weights * xs * ys).sum(axis=1)

    # singles fix the last pair linearly in p_B; coincidences give a quadratic
    share = attacked * last
    rest_1 = s1 - attacked * sum_x
    rest_2 = s2 - attacked * sum_y
    qa = k1 * k2 + share * u * (1.0 - alpha * alpha)
    qb = -(k1 * rest_2 + k2 * rest_1)
    qc = rest_1 * rest_2 + share * (attacked * sum_xy - c)

    disc = qb * qb - 4.0 * qa * qc
    root = np.sqrt(np.maximum(disc, 0.0))
    tol = FEASIBILITY_TOLERANCE
    best: Witness | None = None
    for sign in (-1.0, 1.0):
        p_b = (-qb + sign * root) / (2.0 * qa)
        x_last = (rest_1 - k1 * p_b) / share
        y_last = (rest_2 - k2 * p_b) / share
        ok = (
            (disc >= 0.0)
            & (p_b >= -tol)
            & (p_b <= 1.0 + tol)
            & (x_last >= -tol)
            & (y_last <= 1.0 + tol)
            & (y_last >= x_last - tol)
        )
        if not ok.any():
            continue

        values = _values(
            target,
            attacked,
            sum_x + last * x_last,
            sum_y + last * y_last,
            sum_xy + last * x_last * y_last,
        )
        values = np.where(ok, values, -np.inf)
        top = float(values.max())
        for index in np.flatnonzero(values == top):
            witness: list[float] = [top, p_a, _clip(float(p_b[index]))]
            for w, x, y in zip(weights[index], xs[index], ys[index], strict=True):
                witness.extend((float(w), float(x), float(y)))
            witness.extend(
                (float(last[index]), _clip(float(x_last[index])), _clip(float(y_last[index])))
            )
            candidate = tuple(witness)
            if best is None or _best([best, candidate]) == candidate:
                best = candidate
    return best


def _values(
    target: _Target,
    attacked: float,
    moment_x: np.ndarray,
    moment_y: np.ndarray,
    moment_xy: np.ndarray,
) -> np.ndarray:
    if target.convention is ObjectiveConvention.CLICKS:
        known = attacked * (moment_x + moment_y)
        total = target.s1 + target.s2
    else:
        known = attacked * (moment_x + moment_y - moment_xy)
        total = target.s1 + target.s2 - target.c
    if total <= 0.0:
        return np.zeros_like(moment_x)
    return np.clip(known / total, 0.0, 1.0)


def _full_attack(target: _Target) -> Witness | None:
    """Attack on every pulse with a single strategy, if it fits."""
    x = target.s1 / target.p_e
    y = target.s2 / target.p_e
    if x > y or y > 1.0:
        return None
    mismatch = abs(target.p_e * x * y - target.c)
    if mismatch > FEASIBILITY_TOLERANCE * max(target.c, target.s1 * target.s2 / target.p_e, 1e-300):
        return None
    return (1.0, 1.0, 0.0, 1.0, x, y)


def _honest_match(target: _Target) -> bool:
    p_b = 0.5 * (target.s1 + target.s2)
    expected = (
        ((1.0 + target.alpha) * p_b, target.s1),
        ((1.0 - target.alpha) * p_b, target.s2),
        ((1.0 - target.alpha**2) * p_b * p_b, target.c),
    )
    return all(
        abs(model - seen) <= HONEST_MATCH_TOLERANCE * max(model, seen, 1e-300)
        for model, seen in expected
    )


def _witness(candidate: Witness) -> AttackStrategy:
    _, p_a, p_b, *flat = candidate
    components = [
        StrategyComponent(weight=w, p_d1=x, p_d2=y)
        for w, x, y in zip(flat[0::3], flat[1::3], flat[2::3], strict=True)
        if w > 0.0
    ]
    total = math.fsum(s.weight for s in components)
    components[-1] = components[-1].model_copy(
        update={"weight": components[-1].weight + (1.0 - total)}
    )
    return AttackStrategy(p_a=p_a, p_b=p_b, strategies=components)


def _clip(value: float) -> float:
    return min(1.0, max(0.0, value))
