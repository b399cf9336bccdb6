"""Bounds on the eavesdropper's information per raw-key bit."""

from pixelguard.evebound._common import eve_information
from pixelguard.evebound.finite import confidence_corner, finite_key_bound
from pixelguard.evebound.general import (
    check_imbalance,
    default_imbalance_threshold,
    general_bound,
)
from pixelguard.evebound.oracle import brute_force_bound
from pixelguard.evebound.symmetric import ratio_r, symmetric_bound, symmetric_optimum

__all__ = [
    "brute_force_bound",
    "check_imbalance",
    "confidence_corner",
    "default_imbalance_threshold",
    "eve_information",
    "finite_key_bound",
    "general_bound",
    "ratio_r",
    "symmetric_bound",
    "symmetric_optimum",
]
