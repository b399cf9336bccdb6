"""Bounds on an eavesdropper's information under detector-blinding attacks.

Bob's two-pixel detectors see coincidences between the pixels at a rate
fixed by the light they receive. A blinding attacker must fake those
statistics, and the coincidence ratio r = p_c / p_s^2 limits how much of
the raw key she can hold. This package computes that limit from expected
or observed statistics, with exact finite-sample confidence bounds, and
simulates sessions to check it.

Example:
    ```python
    from pixelguard import ClickCounts, FiniteKeyParams, finite_key_bound

    counts = ClickCounts(n_pulses=10**8, n_s1=61_000, n_s2=61_000, n_c=40)
    bound = finite_key_bound(
        counts, FiniteKeyParams(n_pulses=10**8), p_e=0.197, alpha=0.0
    )
    print(bound.value, bound.regime)
    ```
"""

from pixelguard._utils.logger import get_logger, setup_logging
from pixelguard.constants import (
    ObjectiveConvention,
    PixelOrientation,
    Regime,
    SimulationMethod,
)
from pixelguard.detection import (
    channel_transmission,
    compute_p_e,
    expected_stats,
    honest_pixel_prob,
    honest_stats,
)
from pixelguard.evebound import (
    brute_force_bound,
    confidence_corner,
    default_imbalance_threshold,
    eve_information,
    finite_key_bound,
    general_bound,
    ratio_r,
    symmetric_bound,
    symmetric_optimum,
)
from pixelguard.exceptions import (
    ConvergenceError,
    InfeasibleStatsError,
    NoDetectionsError,
    PixelGuardError,
    PixelImbalanceError,
    SecurityAbortError,
    ValidationError,
)
from pixelguard.finitekey import (
    inv_reg_inc_beta,
    lower_bound_count,
    lower_bound_ps,
    reg_inc_beta,
    upper_bound_count,
    upper_bound_pc,
)
from pixelguard.models import (
    AttackStrategy,
    ClickCounts,
    DetectionStats,
    EveInfoBound,
    FiniteKeyParams,
    RatioRow,
    SimOutcome,
    StrategyComponent,
    SweepRow,
    SystemParams,
)
from pixelguard.montecarlo import empirical_stats, honest_strategy, simulate
from pixelguard.sweeps import sweep_distance, sweep_ratio

__version__ = "0.1.0"

__all__ = [
    # Logging
    "get_logger",
    "setup_logging",
    # Constants/Enums
    "ObjectiveConvention",
    "PixelOrientation",
    "Regime",
    "SimulationMethod",
    # Exceptions
    "ConvergenceError",
    "InfeasibleStatsError",
    "NoDetectionsError",
    "PixelGuardError",
    "PixelImbalanceError",
    "SecurityAbortError",
    "ValidationError",
    # Models
    "AttackStrategy",
    "ClickCounts",
    "DetectionStats",
    "EveInfoBound",
    "FiniteKeyParams",
    "RatioRow",
    "SimOutcome",
    "StrategyComponent",
    "SweepRow",
    "SystemParams",
    # Detection model
    "channel_transmission",
    "compute_p_e",
    "expected_stats",
    "honest_pixel_prob",
    "honest_stats",
    # Finite-key bounds
    "inv_reg_inc_beta",
    "lower_bound_count",
    "lower_bound_ps",
    "reg_inc_beta",
    "upper_bound_count",
    "upper_bound_pc",
    # Eavesdropper bounds
    "brute_force_bound",
    "confidence_corner",
    "default_imbalance_threshold",
    "eve_information",
    "finite_key_bound",
    "general_bound",
    "ratio_r",
    "symmetric_bound",
    "symmetric_optimum",
    # Simulation and sweeps
    "empirical_stats",
    "honest_strategy",
    "simulate",
    "sweep_distance",
    "sweep_ratio",
    # Version
    "__version__",
]
