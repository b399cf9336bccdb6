"""End-to-end tests of the command line."""

import json

import pytest

from pixelguard import honest_stats
from pixelguard.cli import main
from pixelguard.sweeps import expected_counts

pytestmark = pytest.mark.integration


@pytest.fixture
def params_file(reference_params, write_json):
    return write_json("params.json", reference_params.model_dump(mode="json"))


@pytest.fixture
def attack_file(worked_attack, write_json):
    return write_json("attack.json", worked_attack.model_dump(mode="json"))


def _error(capsys) -> dict:
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestAnalyze:
    """Tests for the analyze command."""

    def test_honest_session(self, capsys, reference_params, params_file, write_json):
        counts = expected_counts(honest_stats(reference_params.at_distance(50.0)), 10**12)
        counts_file = write_json("counts.json", counts.model_dump(mode="json"))
        params_file.write_text(reference_params.at_distance(50.0).model_dump_json())

        code = main(["analyze", "--counts", str(counts_file), "--params", str(params_file)])

        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert 0.0 <= report["i_e_upper"] < 0.1
        assert report["regime"] in {"no-attack-evidence", "partial-attack"}
        assert report["inputs"]["counts"]["n_pulses"] == 10**12
        assert report["inputs"]["epsilon"] == 1e-10
        assert report["diagnostics"]["symmetric"] is True

    def test_output_file(self, tmp_path, reference_params, params_file, write_json):
        counts = expected_counts(honest_stats(reference_params), 10**10)
        counts_file = write_json("counts.json", counts.model_dump(mode="json"))
        output = tmp_path / "report.json"

        code = main(
            [
                "analyze",
                "--counts",
                str(counts_file),
                "--params",
                str(params_file),
                "--objective",
                "events",
                "--output",
                str(output),
            ]
        )

        assert code == 0
        report = json.loads(output.read_text())
        assert report["inputs"]["objective"] == "events"

    def test_coincidences_exceed_singles(self, capsys, params_file, write_json):
        counts_file = write_json(
            "counts.json", {"n_pulses": 1000, "n_s1": 5, "n_s2": 10, "n_c": 7}
        )
        code = main(["analyze", "--counts", str(counts_file), "--params", str(params_file)])
        assert code == 1
        error = _error(capsys)
        assert error["error"] == "invalid-input"
        assert "n_c" in error["message"]

    def test_pixel_imbalance(self, capsys, params_file, write_json):
        counts_file = write_json(
            "counts.json", {"n_pulses": 10**6, "n_s1": 12_000, "n_s2": 10_000, "n_c": 120}
        )
        code = main(["analyze", "--counts", str(counts_file), "--params", str(params_file)])
        assert code == 2
        assert _error(capsys)["error"] == "pixel-imbalance"

    def test_imbalance_check_disabled(self, capsys, params_file, write_json):
        counts_file = write_json(
            "counts.json", {"n_pulses": 10**6, "n_s1": 12_000, "n_s2": 10_000, "n_c": 120}
        )
        code = main(
            [
                "analyze",
                "--counts",
                str(counts_file),
                "--params",
                str(params_file),
                "--no-imbalance-check",
            ]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out)["inputs"]["imbalance_threshold"] is None

    def test_unexplained_counts(self, capsys, params_file, write_json):
        counts_file = write_json("counts.json", {"n_pulses": 100, "n_s1": 1, "n_s2": 1, "n_c": 1})
        code = main(["analyze", "--counts", str(counts_file), "--params", str(params_file)])
        assert code == 2
        assert _error(capsys)["error"] == "infeasible-stats"

    def test_missing_counts_file(self, capsys, tmp_path, params_file):
        code = main(
            ["analyze", "--counts", str(tmp_path / "absent.json"), "--params", str(params_file)]
        )
        assert code == 1
        assert _error(capsys)["error"] == "invalid-input"


class TestSimulate:
    """Tests for the simulate command."""

    def test_same_seed_same_bytes(self, tmp_path, params_file, attack_file):
        outputs = [tmp_path / "first.json", tmp_path / "second.json"]
        for output in outputs:
            code = main(
                [
                    "simulate",
                    "--params",
                    str(params_file),
                    "--attack",
                    str(attack_file),
                    "--n-pulses",
                    "200000",
                    "--seed",
                    "17",
                    "--output",
                    str(output),
                ]
            )
            assert code == 0
        assert outputs[0].read_bytes() == outputs[1].read_bytes()
        outcome = json.loads(outputs[0].read_text())
        assert outcome["counts"]["n_pulses"] == 200_000
        assert outcome["seed"] == 17

    def test_seed_required(self, capsys, params_file, attack_file):
        code = main(
            ["simulate", "--params", str(params_file), "--attack", str(attack_file), "--n-pulses", "10"]
        )
        assert code == 1
        assert "--seed" in _error(capsys)["message"]


class TestSweeps:
    """Tests for the sweep commands."""

    def test_sweep_ratio(self, capsys):
        code = main(["sweep-ratio", "--p-e", "0.25", "--r-min", "1", "--r-max", "4", "--step", "1"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "r,i_e_max"
        assert lines[1] == "1,0"
        assert lines[-1] == "4,1"

    def test_sweep_distance(self, capsys, params_file):
        code = main(
            [
                "sweep-distance",
                "--params",
                str(params_file),
                "--at",
                "60",
                "3600",
                "--d-max",
                "100",
                "--step",
                "50",
                "--hoeffding",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].endswith("i_e_upper,i_e_upper_hoeffding")
        assert len(lines) == 1 + 2 * 3

    def test_invalid_ratio_start(self, capsys):
        code = main(["sweep-ratio", "--p-e", "0.25", "--r-min", "0.5"])
        assert code == 1
        assert _error(capsys)["error"] == "invalid-input"


class TestUsage:
    """Tests for usage errors."""

    def test_unknown_command(self, capsys):
        assert main(["certify"]) == 1
        assert _error(capsys)["error"] == "invalid-input"

    def test_missing_command(self, capsys):
        assert main([]) == 1

    def test_bad_objective(self, capsys, params_file, write_json):
        counts_file = write_json("counts.json", {"n_pulses": 100, "n_s1": 1, "n_s2": 1, "n_c": 0})
        code = main(
            [
                "analyze",
                "--counts",
                str(counts_file),
                "--params",
                str(params_file),
                "--objective",
                "bits",
            ]
        )
        assert code == 1

    def test_unknown_log_level(self, capsys):
        assert main(["--log-level", "chatty", "sweep-ratio", "--p-e", "0.25"]) == 1

    def test_debug_logging_goes_to_stderr(self, capsys):
        code = main(["--log-level", "debug", "sweep-ratio", "--p-e", "0.25", "--r-max", "2"])
        assert code == 0
        captured = capsys.readouterr()
        assert captured.out.startswith("r,i_e_max\n")
        assert "pixelguard" not in captured.out
