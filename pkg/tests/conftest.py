"""Shared test fixtures."""

import json
import logging
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from pixelguard import (
    AttackStrategy,
    DetectionStats,
    StrategyComponent,
    SystemParams,
    get_logger,
)


@pytest.fixture
def reference_params() -> SystemParams:
    """Fixture providing the reference scenario (mu=0.5, 10 GHz, 0.2 dB/km, eta=0.5)."""
    return SystemParams(
        mu=0.5,
        pulse_rate_hz=1e10,
        loss_db_per_km=0.2,
        distance_km=0.0,
        eta=0.5,
    )


@pytest.fixture
def worked_attack() -> AttackStrategy:
    """Fixture providing the partial attack p_a=0.5, p_B=0.04, p_d=0.08."""
    return AttackStrategy.single(p_a=0.5, p_b=0.04, p_d1=0.08, p_d2=0.08)


@pytest.fixture
def worked_stats() -> DetectionStats:
    """Fixture providing the statistics of the worked attack at p_E=0.25."""
    return DetectionStats(p_s1=0.03, p_s2=0.03, p_c=0.0016)


@pytest.fixture
def honest_mismatch_stats() -> DetectionStats:
    """Fixture providing unattacked statistics with alpha=0.1, p_B=0.01."""
    return DetectionStats(p_s1=0.011, p_s2=0.009, p_c=0.99 * 1e-4)


@pytest.fixture
def random_attack() -> Callable[[np.random.Generator], AttackStrategy]:
    """Fixture drawing two-strategy attacks favouring pixel 2, with a non-trivial honest part."""

    def draw(rng: np.random.Generator) -> AttackStrategy:
        weight = float(rng.uniform(0.1, 0.9))
        x1, y1 = sorted(rng.uniform(0.0, 0.6, size=2))
        x2, y2 = sorted(rng.uniform(0.0, 0.6, size=2))
        return AttackStrategy(
            p_a=float(rng.uniform(0.05, 0.9)),
            p_b=float(rng.uniform(0.005, 0.05)),
            strategies=[
                StrategyComponent(weight=weight, p_d1=float(x1), p_d2=float(y1)),
                StrategyComponent(weight=1.0 - weight, p_d1=float(x2), p_d2=float(y2)),
            ],
        )

    return draw


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, object], Path]:
    """Fixture writing a JSON document into the test's temporary directory."""

    def write(name: str, payload: object) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return write


@pytest.fixture(autouse=True)
def quiet_logger():
    """Fixture dropping handlers a command installed, so none outlives its captured stream."""
    yield
    logger = get_logger()
    logger.handlers.clear()
    logger.addHandler(logging.NullHandler())
    logger.setLevel(logging.NOTSET)
    logging.captureWarnings(False)
    warnings_logger = logging.getLogger("py.warnings")
    warnings_logger.handlers.clear()
    warnings_logger.propagate = True
