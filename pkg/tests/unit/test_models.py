"""Tests for Pydantic models."""

import pydantic
import pytest

from pixelguard import (
    AttackStrategy,
    ClickCounts,
    DetectionStats,
    EveInfoBound,
    FiniteKeyParams,
    Regime,
    StrategyComponent,
    SystemParams,
)


class TestSystemParams:
    """Tests for SystemParams model."""

    def test_defaults(self, reference_params):
        assert reference_params.t_eve == 1.0
        assert reference_params.q == 0.5
        assert reference_params.alpha == 0.0
        assert reference_params.p_b_override is None

    def test_json_round_trip(self, reference_params):
        assert SystemParams.model_validate_json(reference_params.model_dump_json()) == reference_params

    def test_unknown_field_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            SystemParams(
                mu=0.5,
                pulse_rate_hz=1e10,
                loss_db_per_km=0.2,
                distance_km=0.0,
                eta=0.5,
                detector="InGaAs",
            )

    @pytest.mark.parametrize(
        ("field", "value"),
        [("mu", 0.0), ("eta", 1.5), ("alpha", 1.0), ("distance_km", -1.0), ("q", 0.0)],
    )
    def test_out_of_range(self, reference_params, field, value):
        with pytest.raises(pydantic.ValidationError):
            SystemParams.model_validate({**reference_params.model_dump(), field: value})

    def test_at_distance(self, reference_params):
        moved = reference_params.at_distance(120.0)
        assert moved.distance_km == 120.0
        assert moved.mu == reference_params.mu
        assert reference_params.distance_km == 0.0

    def test_at_negative_distance(self, reference_params):
        with pytest.raises(pydantic.ValidationError):
            reference_params.at_distance(-5.0)

    def test_frozen(self, reference_params):
        with pytest.raises(pydantic.ValidationError):
            reference_params.mu = 0.1


class TestFiniteKeyParams:
    """Tests for FiniteKeyParams model."""

    def test_default_epsilon(self):
        assert FiniteKeyParams(n_pulses=1000).epsilon == 1e-10

    def test_integer_pulses_only(self):
        with pytest.raises(pydantic.ValidationError):
            FiniteKeyParams(n_pulses=1e6)

    def test_epsilon_range(self):
        with pytest.raises(pydantic.ValidationError):
            FiniteKeyParams(n_pulses=1000, epsilon=0.5)


class TestDetectionStats:
    """Tests for DetectionStats model."""

    def test_derived(self, worked_stats):
        assert worked_stats.detection_events == pytest.approx(0.0584)

    def test_coincidence_exceeds_single(self):
        with pytest.raises(pydantic.ValidationError, match="exceeds"):
            DetectionStats(p_s1=0.01, p_s2=0.02, p_c=0.015)


class TestClickCounts:
    """Tests for ClickCounts model."""

    def test_valid(self):
        counts = ClickCounts(n_pulses=100, n_s1=10, n_s2=8, n_c=1)
        assert counts.n_c == 1

    def test_coincidences_exceed_singles(self):
        with pytest.raises(pydantic.ValidationError):
            ClickCounts(n_pulses=100, n_s1=10, n_s2=8, n_c=9)

    def test_singles_exceed_pulses(self):
        with pytest.raises(pydantic.ValidationError):
            ClickCounts(n_pulses=5, n_s1=10, n_s2=3, n_c=0)

    def test_float_counts_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            ClickCounts(n_pulses=100.0, n_s1=10, n_s2=8, n_c=1)


class TestAttackStrategy:
    """Tests for AttackStrategy model."""

    def test_single(self, worked_attack):
        assert len(worked_attack.strategies) == 1

    def test_weights_must_sum_to_one(self):
        with pytest.raises(pydantic.ValidationError, match="sum to 1"):
            AttackStrategy(
                p_a=0.5,
                p_b=0.01,
                strategies=[
                    StrategyComponent(weight=0.5, p_d1=0.1, p_d2=0.2),
                    StrategyComponent(weight=0.4, p_d1=0.0, p_d2=0.3),
                ],
            )

    def test_mixed_orientation_rejected(self):
        with pytest.raises(pydantic.ValidationError, match="ordering"):
            AttackStrategy(
                p_a=0.5,
                p_b=0.01,
                strategies=[
                    StrategyComponent(weight=0.5, p_d1=0.1, p_d2=0.2),
                    StrategyComponent(weight=0.5, p_d1=0.3, p_d2=0.0),
                ],
            )

    def test_balanced_strategies_join_either_side(self):
        attack = AttackStrategy(
            p_a=0.5,
            p_b=0.01,
            strategies=[
                StrategyComponent(weight=0.5, p_d1=0.2, p_d2=0.2),
                StrategyComponent(weight=0.5, p_d1=0.3, p_d2=0.0),
            ],
        )
        assert len(attack.strategies) == 2

    def test_mirrored(self):
        attack = AttackStrategy.single(0.4, 0.01, 0.1, 0.3)
        mirrored = attack.mirrored()
        assert (mirrored.strategies[0].p_d1, mirrored.strategies[0].p_d2) == (0.3, 0.1)
        assert mirrored.mirrored() == attack


class TestEveInfoBound:
    """Tests for EveInfoBound model."""

    def test_attack_regime_requires_optimum(self):
        with pytest.raises(pydantic.ValidationError, match="requires an optimum"):
            EveInfoBound(value=0.3, regime=Regime.PARTIAL_ATTACK)

    def test_aborts(self):
        assert EveInfoBound(value=1.0, regime=Regime.INFEASIBLE_STATS).aborts
        assert not EveInfoBound(value=0.0, regime=Regime.NO_ATTACK_EVIDENCE).aborts

    def test_json_dump(self, worked_attack):
        bound = EveInfoBound(
            value=1.0 / 3.0,
            regime=Regime.PARTIAL_ATTACK,
            optimum=worked_attack,
            diagnostics={"ratio": 1.7778},
        )
        payload = bound.model_dump(mode="json")
        assert payload["regime"] == "partial-attack"
        assert payload["optimum"]["strategies"][0]["weight"] == 1.0
