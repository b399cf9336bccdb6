"""Constants for the pixelguard package."""

from enum import StrEnum

# Scenario defaults (BB84, active basis choice, two-pixel detectors)
DEFAULT_Q = 0.5
DEFAULT_T_EVE = 1.0
HONEST_ROUTING_FACTOR = 0.25  # half the light per detector, half per pixel

# Finite-key defaults
DEFAULT_EPSILON = 1e-10
BOUNDS_PER_SESSION = 3  # p_s1, p_s2, p_c

# Numerical tolerances
WEIGHT_SUM_TOLERANCE = 1e-12
COUNT_ROUNDING_TOLERANCE = 1e-9
SOLVER_RESIDUAL_TOLERANCE = 1e-9
FEASIBILITY_TOLERANCE = 1e-10  # relative to the magnitude of the compared terms
BETA_CF_EPSILON = 1e-15
BETA_CF_MAX_ITERATIONS = 100_000
BETA_INVERSE_TOLERANCE = 1e-15
BETA_INVERSE_MAX_ITERATIONS = 400
LARGE_SHAPE_THRESHOLD = 1e5  # a + b above this uses the asymptotic backend

# General solver search
ATTACK_GRID_POINTS = 2001
ATTACK_EDGE_DECADES = (3, 12)  # log-spaced attack probabilities near 0 and 1
REFINED_MAXIMA = 3
REFINE_XATOL = 1e-12
HONEST_MATCH_TOLERANCE = 1e-9  # relative
IMBALANCE_SIGMAS = 5.0

# Oracle
MAX_ORACLE_RESOLUTION = 0.1
MAX_ORACLE_STRATEGIES = 3
ORACLE_BLOCK_ROWS = 1_000_000  # fixed-strategy rows evaluated at once

# Monte Carlo
SIMULATION_CHUNK_SIZE = 1_000_000
MULTINOMIAL_THRESHOLD = 100_000_000
MULTINOMIAL_SHARDS = 64

# CLI / sweeps
DEFAULT_ACQUISITION_TIMES_S = (1.0, 60.0, 3600.0, 86400.0)
CSV_SIGNIFICANT_DIGITS = 12
SWEEP_DISTANCE_HEADER = (
    "distance_km",
    "acquisition_time_s",
    "n_pulses",
    "p_s1_expected",
    "p_s2_expected",
    "p_c_expected",
    "p_c_upper",
    "p_s_lower",
    "i_e_upper",
)
SWEEP_RATIO_HEADER = ("r", "i_e_max")


class Regime(StrEnum):
    """Outcome class of an eavesdropper-information bound."""

    NO_ATTACK_EVIDENCE = "no-attack-evidence"
    PARTIAL_ATTACK = "partial-attack"
    FULL_ATTACK = "full-attack"
    INFEASIBLE_STATS = "infeasible-stats"


class ObjectiveConvention(StrEnum):
    """How Eve's known detections are counted in the maximised objective."""

    CLICKS = "clicks"  # sum over both pixels, as printed
    EVENTS = "events"  # detection events, coincidences counted once


class PixelOrientation(StrEnum):
    """Which pixel detects faked states with the higher probability."""

    PIXEL2_HIGHER = "pixel2-higher"
    PIXEL1_HIGHER = "pixel1-higher"


class SimulationMethod(StrEnum):
    """Sampling scheme for Monte Carlo sessions."""

    AUTO = "auto"
    BERNOULLI = "bernoulli"
    MULTINOMIAL = "multinomial"
