"""Tests for the general (mismatched, mixed-strategy) bound."""

import numpy as np
import pytest

from pixelguard import (
    AttackStrategy,
    DetectionStats,
    InfeasibleStatsError,
    NoDetectionsError,
    ObjectiveConvention,
    PixelImbalanceError,
    PixelOrientation,
    Regime,
    ValidationError,
    default_imbalance_threshold,
    eve_information,
    expected_stats,
    general_bound,
    symmetric_bound,
)
from pixelguard.constants import SOLVER_RESIDUAL_TOLERANCE


class TestSymmetricReduction:
    """The general solver agrees with the closed form for balanced pixels."""

    def test_worked_example(self, worked_stats):
        bound = general_bound(0.25, worked_stats, 0.0)
        assert bound.value == pytest.approx(1.0 / 3.0, abs=1e-7)
        assert bound.regime is Regime.PARTIAL_ATTACK

    @pytest.mark.parametrize(
        "p_e, p_s, p_c",
        [
            (0.04, 0.02, 0.0016),
            (0.2, 0.01, 1.5e-4),
            (0.1, 0.005, 3e-5),
            (0.45, 0.05, 0.004),
        ],
    )
    def test_matches_closed_form(self, p_e, p_s, p_c):
        stats = DetectionStats(p_s1=p_s, p_s2=p_s, p_c=p_c)
        general = general_bound(p_e, stats, 0.0)
        closed = symmetric_bound(p_e, p_s, p_c)
        assert general.value == pytest.approx(closed.value, abs=1e-7)

    def test_matches_closed_form_at_random_points(self):
        rng = np.random.default_rng(314)
        for _ in range(100):
            p_e = float(rng.uniform(0.05, 0.6))
            p_s = float(rng.uniform(1e-3, 0.05))
            r = float(rng.uniform(1.05, 0.95 / p_e))
            p_c = r * p_s * p_s
            general = general_bound(p_e, DetectionStats(p_s1=p_s, p_s2=p_s, p_c=p_c), 0.0)
            closed = symmetric_bound(p_e, p_s, p_c)
            assert closed.regime is Regime.PARTIAL_ATTACK
            assert general.value == pytest.approx(closed.value, abs=1e-6), (p_e, p_s, p_c)


class TestGeneralBound:
    """Tests for general_bound."""

    def test_honest_statistics(self, honest_mismatch_stats):
        bound = general_bound(0.2, honest_mismatch_stats, 0.1)
        assert bound.value == 0.0
        assert bound.regime is Regime.NO_ATTACK_EVIDENCE

    @pytest.mark.parametrize("alpha", [0.0, 0.05, 0.1, 0.3])
    @pytest.mark.parametrize("p_b", [1e-4, 0.01, 0.2])
    def test_unattacked_statistics_are_exactly_zero(self, alpha, p_b):
        stats = DetectionStats(
            p_s1=(1.0 + alpha) * p_b,
            p_s2=(1.0 - alpha) * p_b,
            p_c=(1.0 - alpha * alpha) * p_b * p_b,
        )
        bound = general_bound(0.2, stats, alpha)
        assert bound.value == 0.0
        assert bound.regime is Regime.NO_ATTACK_EVIDENCE

    def test_witness_reproduces_statistics(self, worked_stats):
        bound = general_bound(0.25, worked_stats, 0.0)
        assert bound.residuals <= SOLVER_RESIDUAL_TOLERANCE
        produced = expected_stats(bound.optimum, 0.25, 0.0)
        assert produced.p_c == pytest.approx(worked_stats.p_c, abs=1e-9)
        assert len(bound.optimum.strategies) <= 2

    def test_full_attack(self):
        attack = AttackStrategy.single(p_a=1.0, p_b=0.0, p_d1=0.1, p_d2=0.3)
        stats = expected_stats(attack, 0.2, 0.05)
        bound = general_bound(0.2, stats, 0.05)
        assert bound.value == 1.0
        assert bound.regime is Regime.FULL_ATTACK
        assert bound.optimum.p_a == 1.0

    def test_sound_against_hidden_attacks(self, random_attack):
        rng = np.random.default_rng(20240607)
        for _ in range(25):
            attack = random_attack(rng)
            stats = expected_stats(attack, 0.2, 0.05)
            bound = general_bound(0.2, stats, 0.05)
            assert bound.value >= eve_information(attack, 0.2, 0.05) - 1e-9
            if bound.optimum is not None:
                assert bound.residuals <= SOLVER_RESIDUAL_TOLERANCE

    def test_witness_favours_pixel_two(self, random_attack):
        rng = np.random.default_rng(7)
        stats = expected_stats(random_attack(rng), 0.2, 0.05)
        bound = general_bound(0.2, stats, 0.05)
        for strategy in bound.optimum.strategies:
            assert strategy.p_d2 >= strategy.p_d1

    def test_orientation_mirror(self, random_attack):
        rng = np.random.default_rng(11)
        attack = random_attack(rng)
        stats = expected_stats(attack, 0.3, 0.0)
        swapped = DetectionStats(p_s1=stats.p_s2, p_s2=stats.p_s1, p_c=stats.p_c)
        direct = general_bound(0.3, stats, 0.0)
        mirrored = general_bound(0.3, swapped, 0.0, orientation=PixelOrientation.PIXEL1_HIGHER)
        assert mirrored.value == pytest.approx(direct.value, abs=1e-9)
        for strategy in mirrored.optimum.strategies:
            assert strategy.p_d1 >= strategy.p_d2
        assert mirrored.residuals <= SOLVER_RESIDUAL_TOLERANCE

    def test_events_convention(self, worked_attack, worked_stats):
        bound = general_bound(0.25, worked_stats, 0.0, convention=ObjectiveConvention.EVENTS)
        truth = eve_information(worked_attack, 0.25, 0.0, ObjectiveConvention.EVENTS)
        assert bound.value >= truth - 1e-9
        assert bound.diagnostics["objective"] == "events"

    def test_imbalance_abort(self):
        stats = DetectionStats(p_s1=0.02, p_s2=0.03, p_c=0.001)
        with pytest.raises(PixelImbalanceError) as exc_info:
            general_bound(0.25, stats, 0.0, imbalance_threshold=1e-3)
        assert exc_info.value.imbalance == pytest.approx(0.01)
        assert exc_info.value.threshold == 1e-3

    def test_wrong_pixel_favoured(self):
        stats = DetectionStats(p_s1=0.03, p_s2=0.01, p_c=0.005)
        with pytest.raises(InfeasibleStatsError):
            general_bound(0.25, stats, 0.1)

    def test_unexplained_low_coincidences(self):
        stats = DetectionStats(p_s1=0.03, p_s2=0.01, p_c=1e-4)
        bound = general_bound(0.25, stats, 0.1)
        assert bound.value == 0.0
        assert bound.diagnostics["model_mismatch"] is True

    def test_equal_efficiencies_follow_busier_pixel(self):
        attack = AttackStrategy.single(p_a=0.5, p_b=0.02, p_d1=0.3, p_d2=0.1)
        stats = expected_stats(attack, 0.25, 0.0)
        bound = general_bound(0.25, stats, 0.0)
        assert bound.diagnostics["orientation"] == "pixel1-higher"
        assert bound.value >= eve_information(attack, 0.25, 0.0) - 1e-9
        for strategy in bound.optimum.strategies:
            assert strategy.p_d1 >= strategy.p_d2

    def test_no_detections(self):
        with pytest.raises(NoDetectionsError):
            general_bound(0.25, DetectionStats(p_s1=0.0, p_s2=0.0, p_c=0.0), 0.0)

    def test_invalid_alpha(self, worked_stats):
        with pytest.raises(ValidationError):
            general_bound(0.25, worked_stats, 1.0)


class TestDefaultImbalanceThreshold:
    """Tests for the default abort threshold."""

    def test_balanced(self):
        stats = DetectionStats(p_s1=0.01, p_s2=0.01, p_c=1e-4)
        variance = (2 * 0.01 * 0.99 - 2 * (1e-4 - 1e-4)) / 10**6
        expected = 5.0 * variance**0.5
        assert default_imbalance_threshold(stats, 0.0, 10**6) == pytest.approx(expected)

    def test_grows_with_mismatch(self, honest_mismatch_stats):
        low = default_imbalance_threshold(honest_mismatch_stats, 0.0, 10**6)
        high = default_imbalance_threshold(honest_mismatch_stats, 0.1, 10**6)
        assert high == pytest.approx(low + 2 * 0.1 * 0.01)

    def test_accepts_honest_difference(self, honest_mismatch_stats):
        threshold = default_imbalance_threshold(honest_mismatch_stats, 0.1, 10**6)
        assert abs(honest_mismatch_stats.p_s1 - honest_mismatch_stats.p_s2) <= threshold
