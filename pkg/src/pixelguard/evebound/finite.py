"""Finite-key bound: analytic bounds evaluated at the confidence corner."""

from __future__ import annotations

from pixelguard._utils.logger import get_logger
from pixelguard.constants import ObjectiveConvention, PixelOrientation
from pixelguard.evebound.general import check_imbalance, general_bound
from pixelguard.evebound.symmetric import symmetric_bound
from pixelguard.exceptions import InfeasibleStatsError, NoDetectionsError, ValidationError
from pixelguard.finitekey import (
    lower_bound_count,
    total_failure_probability,
    upper_bound_count,
)
from pixelguard.models.bound import EveInfoBound
from pixelguard.models.params import FiniteKeyParams
from pixelguard.models.stats import ClickCounts, DetectionStats

logger = get_logger("evebound.finite")


def confidence_corner(counts: ClickCounts, fk: FiniteKeyParams) -> DetectionStats:
    """Worst-case statistics (p_s1^l, p_s2^l, p_c^u) consistent with the counts.

    Raises:
        InfeasibleStatsError: If the coincidence upper bound exceeds a
            single-click lower bound.
    """
    p_s1 = lower_bound_count(counts.n_s1, fk.n_pulses, fk.epsilon)
    p_s2 = lower_bound_count(counts.n_s2, fk.n_pulses, fk.epsilon)
    p_c = upper_bound_count(counts.n_c, fk.n_pulses, fk.epsilon)
    if p_c > min(p_s1, p_s2):
        raise InfeasibleStatsError(
            "Coincidence upper bound exceeds a single-click lower bound",
            p_s1_lower=p_s1,
            p_s2_lower=p_s2,
            p_c_upper=p_c,
        )
    return DetectionStats(p_s1=p_s1, p_s2=p_s2, p_c=p_c)


def finite_key_bound(
    counts: ClickCounts,
    fk: FiniteKeyParams,
    p_e: float,
    alpha: float,
    imbalance_threshold: float | None = None,
    *,
    convention: ObjectiveConvention = ObjectiveConvention.CLICKS,
    orientation: PixelOrientation = PixelOrientation.PIXEL2_HIGHER,
    symmetric: bool | None = None,
) -> EveInfoBound:
    """Bound on Eve's information that holds with probability 1 - 3 epsilon.

    Args:
        counts: Observed click counts.
        fk: Pulse count and per-bound failure probability.
        p_e: Faked-state detectability.
        alpha: Pixel efficiency mismatch.
        imbalance_threshold: Abort threshold on |p_s1 - p_s2| of the
            observed frequencies; None disables the check.
        convention: How Eve's known detections are counted.
        orientation: Which pixel Eve's strategies favour (general path).
        symmetric: Force (True) or forbid (False) the closed form. By
            default it is used when alpha is 0 and both pixels counted the
            same number of clicks.

    Returns:
        EveInfoBound at the corner, with the corner and the total failure
        probability in ``diagnostics``.

    Raises:
        ValidationError: If counts and parameters disagree.
        NoDetectionsError: If no pixel clicked.
        PixelImbalanceError: If the imbalance check fails.
        InfeasibleStatsError: If the corner cannot be explained.
    """
    if counts.n_pulses != fk.n_pulses:
        raise ValidationError(
            "Click counts and finite-key parameters disagree on the pulse count",
            counts=counts.n_pulses,
            params=fk.n_pulses,
        )
    if counts.n_s1 == 0 and counts.n_s2 == 0:
        raise NoDetectionsError("No single clicks observed", n_pulses=counts.n_pulses)

    observed = DetectionStats(
        p_s1=counts.n_s1 / counts.n_pulses,
        p_s2=counts.n_s2 / counts.n_pulses,
        p_c=counts.n_c / counts.n_pulses,
    )
    check_imbalance(observed, imbalance_threshold)

    corner = confidence_corner(counts, fk)
    use_symmetric = (
        symmetric if symmetric is not None else (alpha == 0.0 and counts.n_s1 == counts.n_s2)
    )
    if use_symmetric:
        p_s = min(corner.p_s1, corner.p_s2)
        if p_s == 0.0:
            raise NoDetectionsError("Single-click lower bound is zero")
        result = symmetric_bound(p_e, p_s, corner.p_c)
    else:
        result = general_bound(p_e, corner, alpha, convention=convention, orientation=orientation)

    if result.aborts:
        raise InfeasibleStatsError(
            "Confidence corner admits no attack or honest assignment",
            p_s1_lower=corner.p_s1,
            p_s2_lower=corner.p_s2,
            p_c_upper=corner.p_c,
        )

    logger.info(
        f"Finite-key bound {result.value:.6g} ({result.regime}) for N={fk.n_pulses}, "
        f"eps={fk.epsilon:g}"
    )
    return result.model_copy(
        update={
            "diagnostics": {
                **result.diagnostics,
                "p_s1_lower": corner.p_s1,
                "p_s2_lower": corner.p_s2,
                "p_c_upper": corner.p_c,
                "symmetric": use_symmetric,
                "total_failure_probability": total_failure_probability(fk.epsilon),
            }
        }
    )
