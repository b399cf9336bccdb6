"""Tests for the grid-search oracle."""

import numpy as np
import pytest

from pixelguard import (
    AttackStrategy,
    DetectionStats,
    Regime,
    StrategyComponent,
    ValidationError,
    brute_force_bound,
    eve_information,
    expected_stats,
    general_bound,
)
from pixelguard.constants import ORACLE_BLOCK_ROWS
from pixelguard.evebound import oracle


@pytest.fixture
def grid_attack() -> AttackStrategy:
    """Two-strategy attack whose parameters lie on a 0.02 grid."""
    return AttackStrategy(
        p_a=0.4,
        p_b=0.02,
        strategies=[
            StrategyComponent(weight=0.6, p_d1=0.1, p_d2=0.1),
            StrategyComponent(weight=0.4, p_d1=0.0, p_d2=0.5),
        ],
    )


class TestBruteForceBound:
    """Tests for brute_force_bound."""

    def test_worked_example(self, worked_stats):
        bound = brute_force_bound(0.25, worked_stats, 0.0, 1e-3)
        assert bound.value == pytest.approx(1.0 / 3.0, abs=2e-3)
        assert bound.regime is Regime.PARTIAL_ATTACK
        assert bound.diagnostics["n_strategies"] == 1

    def test_two_strategies_by_default_for_mismatched_pixels(self, honest_mismatch_stats):
        bound = brute_force_bound(0.2, honest_mismatch_stats, 0.1, 0.05)
        assert bound.diagnostics["n_strategies"] == 2

    def test_block_size_does_not_change_result(self, grid_attack, monkeypatch):
        stats = expected_stats(grid_attack, 0.2, 0.05)
        whole = brute_force_bound(0.2, stats, 0.05, 0.05)
        monkeypatch.setattr(oracle, "ORACLE_BLOCK_ROWS", 1)
        blocked = brute_force_bound(0.2, stats, 0.05, 0.05)
        assert blocked.value == whole.value
        assert blocked.optimum == whole.optimum
        assert blocked.diagnostics["grid_points"] == whole.diagnostics["grid_points"]

    def test_fine_grid_blocks_stay_bounded(self):
        grid = np.linspace(0.0, 1.0, 1001)
        weight_sets = oracle._weight_sets(grid, 1)
        block = next(oracle._fixed_blocks(grid, weight_sets))
        assert len(weight_sets) == 999
        assert len(block.last) == 1001 * 1002 // 2
        assert len(block.last) <= ORACLE_BLOCK_ROWS
        assert np.all(block.xs <= block.ys)

    def test_quarter(self):
        stats = DetectionStats(p_s1=0.02, p_s2=0.02, p_c=0.0016)
        bound = brute_force_bound(0.04, stats, 0.0, 1e-3, n_strategies=1)
        assert bound.value == pytest.approx(0.25, abs=2e-3)

    def test_honest_statistics(self, honest_mismatch_stats):
        bound = brute_force_bound(0.2, honest_mismatch_stats, 0.1, 0.01, n_strategies=1)
        assert bound.value == pytest.approx(0.0, abs=1e-9)
        assert bound.regime is Regime.NO_ATTACK_EVIDENCE

    def test_honest_statistics_two_strategies(self, honest_mismatch_stats):
        bound = brute_force_bound(0.2, honest_mismatch_stats, 0.1, 0.02)
        assert bound.value == pytest.approx(0.0, abs=1e-9)

    def test_finds_grid_attack(self, grid_attack):
        stats = expected_stats(grid_attack, 0.2, 0.05)
        bound = brute_force_bound(0.2, stats, 0.05, 0.02)
        assert bound.value >= eve_information(grid_attack, 0.2, 0.05) - 1e-9
        assert bound.residuals <= 1e-9

    def test_never_exceeds_general_bound(self, grid_attack):
        stats = expected_stats(grid_attack, 0.2, 0.05)
        oracle = brute_force_bound(0.2, stats, 0.05, 0.02)
        general = general_bound(0.2, stats, 0.05)
        assert oracle.value <= general.value + 1e-9
        assert general.value >= eve_information(grid_attack, 0.2, 0.05) - 1e-9

    def test_agrees_with_general_on_balanced_pixels(self, worked_stats):
        oracle = brute_force_bound(0.25, worked_stats, 0.0, 1e-3, n_strategies=1)
        general = general_bound(0.25, worked_stats, 0.0)
        assert oracle.value == pytest.approx(general.value, abs=1e-3)

    def test_three_strategies(self):
        attack = AttackStrategy(
            p_a=0.5,
            p_b=0.04,
            strategies=[
                StrategyComponent(weight=0.3, p_d1=0.1, p_d2=0.2),
                StrategyComponent(weight=0.3, p_d1=0.0, p_d2=0.4),
                StrategyComponent(weight=0.4, p_d1=0.3, p_d2=0.3),
            ],
        )
        stats = expected_stats(attack, 0.25, 0.0)
        bound = brute_force_bound(0.25, stats, 0.0, 0.1, n_strategies=3)
        assert bound.value >= eve_information(attack, 0.25, 0.0) - 1e-9
        assert bound.value <= general_bound(0.25, stats, 0.0).value + 1e-9

    def test_workers_do_not_change_result(self, grid_attack):
        stats = expected_stats(grid_attack, 0.2, 0.05)
        single = brute_force_bound(0.2, stats, 0.05, 0.05)
        threaded = brute_force_bound(0.2, stats, 0.05, 0.05, workers=3)
        assert threaded.value == single.value
        assert threaded.optimum == single.optimum

    def test_coincidences_exceed_singles(self):
        stats = DetectionStats.model_construct(p_s1=0.01, p_s2=0.01, p_c=0.02)
        bound = brute_force_bound(0.25, stats, 0.0, 0.05)
        assert bound.regime is Regime.INFEASIBLE_STATS
        assert bound.aborts

    @pytest.mark.parametrize("resolution", [0.0, 0.2])
    def test_invalid_resolution(self, worked_stats, resolution):
        with pytest.raises(ValidationError):
            brute_force_bound(0.25, worked_stats, 0.0, resolution)

    @pytest.mark.parametrize("n_strategies", [0, 4])
    def test_invalid_strategy_count(self, worked_stats, n_strategies):
        with pytest.raises(ValidationError):
            brute_force_bound(0.25, worked_stats, 0.0, 0.05, n_strategies=n_strategies)
