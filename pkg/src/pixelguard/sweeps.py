"""Distance and coincidence-ratio sweeps, and their CSV rendering."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import validate_positive, validate_probability, validate_range
from pixelguard.constants import (
    CSV_SIGNIFICANT_DIGITS,
    DEFAULT_ACQUISITION_TIMES_S,
    DEFAULT_EPSILON,
    SWEEP_DISTANCE_HEADER,
    SWEEP_RATIO_HEADER,
    ObjectiveConvention,
    PixelOrientation,
)
from pixelguard.detection import compute_p_e, honest_stats
from pixelguard.evebound import finite_key_bound, general_bound, symmetric_bound
from pixelguard.exceptions import InfeasibleStatsError, NoDetectionsError, ValidationError
from pixelguard.finitekey import (
    hoeffding_lower,
    hoeffding_upper,
    lower_bound_count,
    upper_bound_count,
)
from pixelguard.models.params import FiniteKeyParams, SystemParams
from pixelguard.models.stats import ClickCounts, DetectionStats
from pixelguard.models.sweep import RatioRow, SweepRow

logger = get_logger("sweeps")


def sweep_distance(
    params: SystemParams,
    acquisition_times: Sequence[float] = DEFAULT_ACQUISITION_TIMES_S,
    d_min: float = 0.0,
    d_max: float = 300.0,
    step: float = 1.0,
    epsilon: float = DEFAULT_EPSILON,
    *,
    hoeffding: bool = False,
    convention: ObjectiveConvention = ObjectiveConvention.CLICKS,
    orientation: PixelOrientation = PixelOrientation.PIXEL2_HIGHER,
    workers: int = 1,
) -> list[SweepRow]:
    """Finite-key bound of an unattacked link against distance.

    For every acquisition time and distance the expected counts of an
    honest session (``round(N p)``) are bounded as if they were observed.
    Rows whose confidence corner cannot be explained get ``i_e_upper = 1``.

    Args:
        params: Scenario; ``distance_km`` is replaced by the sweep values.
        acquisition_times: Session lengths in seconds.
        d_min: First distance (km).
        d_max: Last distance (km), included when reached by the step.
        step: Distance step (km).
        epsilon: Per-bound failure probability.
        hoeffding: Also fill ``i_e_upper_hoeffding``.
        convention: Objective convention of the general bound.
        orientation: Strategy orientation of the general bound.
        workers: Threads computing rows; rows keep their order.

    Returns:
        Rows ordered by acquisition time, then distance.
    """
    validate_range("d_min", d_min, "d_max", d_max)
    validate_positive("step", step)
    validate_probability("epsilon", epsilon, open_low=True, open_high=True)
    for seconds in acquisition_times:
        validate_positive("acquisition_time_s", seconds)

    count = math.floor((d_max - d_min) / step * (1.0 + 1e-12)) + 1
    distances = [d_min + i * step for i in range(count)]
    tasks = [(seconds, distance) for seconds in acquisition_times for distance in distances]

    def row(task: tuple[float, float]) -> SweepRow:
        seconds, distance = task
        return _sweep_row(
            params.at_distance(distance),
            seconds,
            epsilon,
            hoeffding=hoeffding,
            convention=convention,
            orientation=orientation,
        )

    logger.info(f"Distance sweep: {len(tasks)} rows, workers={workers}")
    if workers == 1:
        return [row(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, tasks))


def sweep_ratio(
    p_e: float, r_min: float = 1.0, r_max: float = 10.0, step: float = 0.1
) -> list[RatioRow]:
    """Asymptotic bound as a function of the coincidence ratio r.

    ``I_E,max(r) = sqrt(p_E) / (1 - sqrt(p_E)) * (sqrt(r) - 1)``, clamped to
    [0, 1].
    """
    validate_probability("p_e", p_e, open_low=True, open_high=True)
    if r_min < 1.0:
        raise ValidationError(f"r_min must be at least 1 (got {r_min})")
    validate_range("r_min", r_min, "r_max", r_max)
    validate_positive("step", step)

    count = math.floor((r_max - r_min) / step * (1.0 + 1e-12)) + 1
    ratios = r_min + step * np.arange(count)
    root_e = math.sqrt(p_e)
    values = np.clip(root_e / (1.0 - root_e) * (np.sqrt(ratios) - 1.0), 0.0, 1.0)
    return [RatioRow(r=float(r), i_e_max=float(v)) for r, v in zip(ratios, values, strict=True)]


def _sweep_row(
    params: SystemParams,
    seconds: float,
    epsilon: float,
    *,
    hoeffding: bool,
    convention: ObjectiveConvention,
    orientation: PixelOrientation,
) -> SweepRow:
    stats = honest_stats(params)
    p_e = compute_p_e(params)
    n_pulses = max(1, round(params.pulse_rate_hz * seconds))
    counts = expected_counts(stats, n_pulses)
    fk = FiniteKeyParams(n_pulses=n_pulses, epsilon=epsilon)

    p_c_upper = upper_bound_count(counts.n_c, n_pulses, epsilon)
    p_s_lower = min(
        lower_bound_count(counts.n_s1, n_pulses, epsilon),
        lower_bound_count(counts.n_s2, n_pulses, epsilon),
    )
    try:
        i_e_upper = finite_key_bound(
            counts, fk, p_e, params.alpha, convention=convention, orientation=orientation
        ).value
    except (InfeasibleStatsError, NoDetectionsError) as error:
        logger.debug(f"No certificate at {params.distance_km} km, {seconds} s: {error.reason}")
        i_e_upper = 1.0

    i_e_hoeffding = None
    if hoeffding:
        i_e_hoeffding = _hoeffding_value(
            counts, epsilon, p_e, params.alpha, convention, orientation
        )

    return SweepRow(
        distance_km=params.distance_km,
        acquisition_time_s=seconds,
        n_pulses=n_pulses,
        p_s1_expected=stats.p_s1,
        p_s2_expected=stats.p_s2,
        p_c_expected=stats.p_c,
        p_c_upper=p_c_upper,
        p_s_lower=p_s_lower,
        i_e_upper=i_e_upper,
        i_e_upper_hoeffding=i_e_hoeffding,
    )


def expected_counts(stats: DetectionStats, n_pulses: int) -> ClickCounts:
    """Rounded expected counts ``round(N p)`` of a session."""
    n_s1 = round(stats.p_s1 * n_pulses)
    n_s2 = round(stats.p_s2 * n_pulses)
    n_c = min(round(stats.p_c * n_pulses), n_s1, n_s2)
    return ClickCounts(n_pulses=n_pulses, n_s1=n_s1, n_s2=n_s2, n_c=n_c)


def _hoeffding_value(
    counts: ClickCounts,
    epsilon: float,
    p_e: float,
    alpha: float,
    convention: ObjectiveConvention,
    orientation: PixelOrientation,
) -> float:
    """The same bound with Hoeffding intervals instead of exact ones."""
    n = counts.n_pulses
    p_s1 = hoeffding_lower(counts.n_s1 / n, n, epsilon)
    p_s2 = hoeffding_lower(counts.n_s2 / n, n, epsilon)
    p_c = hoeffding_upper(counts.n_c / n, n, epsilon)
    if p_c > min(p_s1, p_s2) or max(p_s1, p_s2) == 0.0:
        return 1.0
    corner = DetectionStats(p_s1=p_s1, p_s2=p_s2, p_c=p_c)
    try:
        if alpha == 0.0 and p_s1 == p_s2:
            result = symmetric_bound(p_e, p_s1, p_c)
        else:
            result = general_bound(p_e, corner, alpha, convention=convention, orientation=orientation)
    except (InfeasibleStatsError, NoDetectionsError):
        return 1.0
    return 1.0 if result.aborts else result.value


def format_csv(header: Sequence[str], rows: Iterable[Sequence[float | int]]) -> str:
    """CSV with a header line, ``\\n`` line endings and 12 significant digits."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
    return buffer.getvalue()


def distance_csv(rows: Iterable[SweepRow], *, hoeffding: bool = False) -> str:
    """CSV of a distance sweep, optionally with the Hoeffding column."""
    header = list(SWEEP_DISTANCE_HEADER) + (["i_e_upper_hoeffding"] if hoeffding else [])
    return format_csv(header, ([getattr(row, name) for name in header] for row in rows))


def ratio_csv(rows: Iterable[RatioRow]) -> str:
    """CSV of a ratio sweep."""
    return format_csv(SWEEP_RATIO_HEADER, ([row.r, row.i_e_max] for row in rows))


def _format_cell(cell: float | int | None) -> str:
    if cell is None:
        return ""
    if isinstance(cell, int):
        return str(cell)
    return f"{cell:.{CSV_SIGNIFICANT_DIGITS}g}"
