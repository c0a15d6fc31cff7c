"""Pytest configuration and fixtures."""

import json
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every random ensemble is reproducible."""
    return np.random.default_rng(20240917)


@pytest.fixture
def nilpotent():
    """The 2x2 Jordan block [[0, 1], [0, 0]]; W is the disk of radius 1/2."""
    from src.linalg.operators import Operator

    return Operator(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.fixture
def noncommuting_pair():
    """Two PSD 2x2 matrices with a nonzero commutator."""
    from src.linalg.operators import Operator

    A = Operator(np.array([[1.0, 0.0], [0.0, 0.0]]))
    B = Operator(np.array([[0.5, 0.5], [0.5, 0.5]]))
    return A, B


@pytest.fixture
def psd8(rng):
    """Random 8x8 Hermitian PSD generator with spectrum in [0.5, 10]."""
    from src.linalg.generators import random_psd

    return random_psd(rng, 8, spectral_radius=10.0, min_eigenvalue=0.5)


@pytest.fixture
def resolvent_family(psd8):
    """Self-adjoint resolvent family built on psd8."""
    from src.families.chernoff import Regularity, make_resolvent_family

    return make_resolvent_family(psd8, Regularity.self_adjoint())


@pytest.fixture
def exp_family(psd8):
    """The exact family exp(-tau H) on psd8."""
    from src.families.chernoff import Regularity, make_exp_family

    return make_exp_family(psd8, Regularity.self_adjoint())


@pytest.fixture
def scenario_file(tmp_path: Path) -> Callable[[dict], Path]:
    """Write a scenario dict to a JSON file whose out_dir lives under tmp_path."""

    def write(data: dict, name: str = "scenario.json") -> Path:
        data = {"out_dir": str(tmp_path / "runs" / data.get("name", "run")), **data}
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return path

    return write


@pytest.fixture
def matrix_object() -> Callable[[np.ndarray], dict]:
    """Interchange object for a real or complex matrix."""

    def build(a: np.ndarray) -> dict:
        a = np.asarray(a, dtype=np.complex128)
        return {"dim": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}

    return build
