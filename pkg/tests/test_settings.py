"""Tests for environment-driven settings."""

import os

import pytest
from pydantic import ValidationError

from src.config.settings import Settings


class TestSettings:
    """Tests for the Settings model."""

    def test_defaults(self):
        """Test the documented tolerances."""
        s = Settings()
        assert s.hermitian_tol == 1e-10
        assert s.membership_tol == 1e-9
        assert s.error_floor == 1e-14
        assert s.range_points == 360
        assert s.t_grid_size == 101

    def test_environment_override(self, monkeypatch):
        """Test that CHERNOFF_KIT_ variables override fields."""
        monkeypatch.setenv("CHERNOFF_KIT_THREADS", "3")
        monkeypatch.setenv("CHERNOFF_KIT_PASS_TOL", "1e-8")
        s = Settings()
        assert s.threads == 3
        assert s.worker_count == 3
        assert s.pass_tol == 1e-8

    def test_auto_workers(self, monkeypatch):
        """Test that threads = 0 means one worker per CPU."""
        monkeypatch.setenv("CHERNOFF_KIT_THREADS", "0")
        assert Settings().worker_count == (os.cpu_count() or 1)

    @pytest.mark.parametrize(
        ("name", "value"),
        [("THREADS", "-1"), ("HERMITIAN_TOL", "0"), ("RANGE_POINTS", "4"), ("T_GRID_SIZE", "1")],
    )
    def test_invalid_values(self, monkeypatch, name, value):
        """Test that out-of-range values are rejected."""
        monkeypatch.setenv(f"CHERNOFF_KIT_{name}", value)
        with pytest.raises(ValidationError):
            Settings()
