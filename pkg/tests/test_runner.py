"""Tests for scenario loading, execution and artifact writing."""

import json

import numpy as np
import pytest

from src.analysis.approximants import TInterval
from src.bounds.registry import describe
from src.config.constants import BoundId
from src.errors import ScenarioError
from src.runner.models import Scenario, load_scenario, parse_scenario
from src.runner.pool import gather_map, run_parallel
from src.runner.scenario import EXIT_CONFIG, EXIT_OK, EXIT_VIOLATION, run_scenario, run_sweep
from src.runner.writers import CSV_COLUMNS, read_error_csv


@pytest.fixture
def scalar_resolvent_data(tmp_path, matrix_object):
    """Scenario dict for the resolvent family of H = diag(1, 2)."""
    return {
        "name": "scalar",
        "family": {"kind": "resolvent", "H": matrix_object(np.diag([1.0, 2.0]))},
        "n_list": [1, 2, 4, 8, 16],
        "t": 1.0,
        "bounds": ["eq-3.1.151", "eq-0.5"],
        "seed": 1,
        "out_dir": str(tmp_path / "scalar"),
    }


class TestScenarioModel:
    """Tests for scenario validation."""

    def test_defaults(self, matrix_object):
        """Test the default n refinement and t."""
        scenario = Scenario.model_validate(
            {"name": "x", "family": {"kind": "exponential", "H": matrix_object(np.eye(2))}}
        )
        assert scenario.n_list == [2**k for k in range(3, 11)]
        assert scenario.t_value == 1.0

    def test_interval(self, scalar_resolvent_data):
        """Test that an interval t becomes a TInterval."""
        scenario = Scenario.model_validate({**scalar_resolvent_data, "t": {"lo": 0, "hi": 2, "grid": 5}})
        assert list(scenario.t_value.points()) == [0.0, 0.5, 1.0, 1.5, 2.0]

    def test_unsorted_n_list(self, scalar_resolvent_data):
        """Test that a descending n_list is rejected with its line number."""
        text = json.dumps({**scalar_resolvent_data, "n_list": [4, 2]}, indent=2)
        with pytest.raises(ScenarioError, match="n_list"):
            parse_scenario(text, "bad.json")

    def test_random_without_seed(self):
        """Test that random matrices require a seed."""
        data = {"name": "r", "family": {"kind": "resolvent", "H": "random:d=3,psd"}}
        with pytest.raises(ScenarioError, match="seed"):
            parse_scenario(json.dumps(data))

    def test_unknown_bound(self, scalar_resolvent_data):
        """Test that an unknown bound id is rejected."""
        with pytest.raises(ScenarioError, match="bounds"):
            parse_scenario(json.dumps({**scalar_resolvent_data, "bounds": ["eq-9.9"]}))

    def test_alpha_range(self, scalar_resolvent_data):
        """Test that alpha >= pi/2 is rejected."""
        with pytest.raises(ScenarioError, match="alpha"):
            parse_scenario(json.dumps({**scalar_resolvent_data, "alpha": 2.0}))

    def test_invalid_json_reports_line(self):
        """Test that malformed JSON reports line and column."""
        with pytest.raises(ScenarioError, match=r"broken.json:3:"):
            parse_scenario('{\n  "name": "x",\n  "family": }\n', "broken.json")

    def test_missing_file(self, tmp_path):
        """Test that an unreadable path raises ScenarioError."""
        with pytest.raises(ScenarioError):
            load_scenario(tmp_path / "absent.json")

    def test_load_from_file(self, scenario_file, scalar_resolvent_data):
        """Test loading a scenario file."""
        assert load_scenario(scenario_file(scalar_resolvent_data)).name == "scalar"


class TestRunScenario:
    """Tests for scenario execution and artifacts."""

    def test_artifacts(self, scalar_resolvent_data, tmp_path):
        """Test exit 0 and the three artifacts."""
        result = run_scenario(Scenario.model_validate(scalar_resolvent_data), workers=2)
        assert result.exit_code == EXIT_OK
        out = tmp_path / "scalar"
        header = (out / "errors.csv").read_text().splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)
        reports = json.loads((out / "reports.json").read_text())
        assert {r["bound_id"] for r in reports} == {"eq-3.1.151", "eq-0.5"}
        assert all(r["pass"] for r in reports)
        summary = (out / "summary.txt").read_text()
        assert summary.rstrip().endswith(f"PASS {len(reports)}/{len(reports)}")

    def test_summary_describes_each_bound(self, scalar_resolvent_data, tmp_path):
        """Test that every bound line in summary.txt carries its inequality."""
        run_scenario(Scenario.model_validate(scalar_resolvent_data))
        summary = (tmp_path / "scalar" / "summary.txt").read_text()
        for bound_id in (BoundId.SPECTRAL, BoundId.SQRT_N_LEMMA):
            assert f"bound {bound_id.value} [{describe(bound_id)}]" in summary

    def test_csv_reload_is_exact(self, scalar_resolvent_data, tmp_path):
        """Test that reloaded errors match the in-memory curve bit for bit."""
        result = run_scenario(Scenario.model_validate(scalar_resolvent_data), include_bounds=False)
        (reloaded,) = read_error_csv(tmp_path / "scalar" / "errors.csv")
        (curve,) = result.curves
        assert reloaded.family_id == curve.family_id
        assert [s.n for s in reloaded.samples] == [s.n for s in curve.samples]
        assert np.array_equal(reloaded.errors, curve.errors)
        assert reloaded.fitted == curve.fitted
        assert reloaded.to_dict() == curve.to_dict()

    def test_interval_csv_reload_is_exact(self, scalar_resolvent_data, tmp_path):
        """Test that an interval curve reloads with its TInterval and identical errors."""
        data = {**scalar_resolvent_data, "t": {"lo": 0.0, "hi": 2.0, "grid": 11}}
        result = run_scenario(Scenario.model_validate(data), include_bounds=False)
        (reloaded,) = read_error_csv(tmp_path / "scalar" / "errors.csv")
        (curve,) = result.curves
        assert isinstance(reloaded.t, TInterval)
        assert reloaded.t == curve.t
        assert np.array_equal(reloaded.errors, curve.errors)
        assert reloaded.to_dict() == curve.to_dict()

    def test_deterministic_reports(self, scalar_resolvent_data, tmp_path):
        """Test byte-identical reports across runs with different worker counts."""
        first = {
            **scalar_resolvent_data,
            "out_dir": str(tmp_path / "a"),
            "bounds": ["eq-0.5", "lemma-3.2.1-c"],
            "options": {"pairs": 6},
        }
        second = {**first, "out_dir": str(tmp_path / "b")}
        run_scenario(Scenario.model_validate(first), workers=1)
        run_scenario(Scenario.model_validate(second), workers=4)
        for name in ("reports.json", "errors.csv", "summary.txt"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_violation_exit_code(self, matrix_object, tmp_path):
        """Test exit 1 when a bound is violated."""
        scenario = Scenario.model_validate(
            {
                "name": "flat",
                "family": {"kind": "exponential", "H": matrix_object(np.zeros((2, 2)))},
                "n_list": [1, 2],
                "bounds": ["eq-3.3.20"],
                "out_dir": str(tmp_path / "flat"),
            }
        )
        result = run_scenario(scenario)
        assert result.exit_code == EXIT_VIOLATION
        assert not any(r.passed for r in result.reports)

    def test_config_error_exit_code(self, matrix_object, tmp_path):
        """Test exit 2 when the declared regularity fails its pre-check."""
        scenario = Scenario.model_validate(
            {
                "name": "neg",
                "family": {"kind": "resolvent", "H": matrix_object(np.diag([-1.0, 1.0]))},
                "out_dir": str(tmp_path / "neg"),
            }
        )
        result = run_scenario(scenario)
        assert result.exit_code == EXIT_CONFIG
        assert "positive semi-definite" in result.error
        assert not (tmp_path / "neg").exists()

    def test_interval_scenario(self, scalar_resolvent_data, tmp_path):
        """Test that an interval curve records maximizing times inside the interval."""
        data = {**scalar_resolvent_data, "t": {"lo": 0.0, "hi": 2.0, "grid": 21}, "bounds": ["eq-3.3.15"]}
        result = run_scenario(Scenario.model_validate(data))
        assert result.exit_code == EXIT_OK
        assert all(0.0 <= s.t <= 2.0 for s in result.curves[0].samples)


class TestRunSweep:
    """Tests for seed sweeps."""

    def test_sweep_directories(self, tmp_path):
        """Test one sub-directory per seed and a sweep summary."""
        scenario = Scenario.model_validate(
            {
                "name": "sweep",
                "family": {"kind": "resolvent", "H": "random:d=3,spectral_radius=2,psd"},
                "n_list": [4, 8],
                "bounds": ["eq-3.1.151"],
                "seed": 10,
                "out_dir": str(tmp_path / "sweep"),
            }
        )
        results = run_sweep(scenario, 3)
        assert [seed for seed, _ in results] == [10, 11, 12]
        for seed in (10, 11, 12):
            assert (tmp_path / "sweep" / f"seed-{seed}" / "reports.json").exists()
        lines = (tmp_path / "sweep" / "sweep_summary.txt").read_text().splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("seed 10: exit 0")

    def test_sweep_needs_a_seed_count(self, scalar_resolvent_data):
        """Test that zero seeds is rejected."""
        with pytest.raises(ValueError):
            run_sweep(Scenario.model_validate(scalar_resolvent_data), 0)


class TestPool:
    """Tests for the bounded concurrent map."""

    def test_order_is_preserved(self):
        """Test that results follow input order."""
        assert run_parallel(lambda x: x * x, range(10), workers=3) == [x * x for x in range(10)]

    def test_empty(self):
        """Test that an empty input returns an empty list."""
        assert run_parallel(lambda x: x, []) == []

    def test_exceptions_are_returned(self):
        """Test that return_exceptions collects errors in place."""

        def fail_on_two(x: int) -> int:
            if x == 2:
                raise ValueError("two")
            return x

        results = run_parallel(fail_on_two, [1, 2, 3], return_exceptions=True)
        assert results[0] == 1 and results[2] == 3
        assert isinstance(results[1], ValueError)

    def test_gather_map_in_running_loop(self):
        """Test the coroutine form directly."""
        import asyncio

        assert asyncio.run(gather_map(str, [1, 2], workers=1)) == ["1", "2"]
