"""Kato functions: 0 <= f <= 1, f(0) = 1, f'(+0) = -1, and gamma[f]."""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.config.settings import settings
from src.errors import InvalidKato

logger = logging.getLogger(__name__)

GAMMA_TOL = 1e-9

ScalarMap = Callable[[Any], Any]


@dataclass(frozen=True)
class KatoFunction:
    """A validated Kato function with its computed constants."""

    id: str
    func: ScalarMap
    gamma: float  # sup_{x>0} (1 - f(x))/x: grid maximum, at least the limit 1 at +0
    derivative_at_zero: float

    def __call__(self, s: Any) -> Any:
        return self.func(s)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "valid": True,
            "gamma": self.gamma,
            "derivative_at_zero": self.derivative_at_zero,
        }


def default_grid() -> np.ndarray:
    """Logarithmic grid on (0, x_max] with points near 0."""
    return np.logspace(
        np.log10(settings.kato_grid_min),
        np.log10(settings.kato_grid_max),
        settings.kato_grid_points,
    )


def validate_kato(
    f: ScalarMap, grid: np.ndarray | None = None, id: str = "custom"
) -> KatoFunction:
    """Check each Kato clause on ``grid`` and compute gamma[f] and f'(+0)."""
    grid = default_grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
    if grid.size == 0 or grid[0] <= 0:
        raise ValueError("Kato validation grid must be nonempty and positive")

    values = np.array([float(f(float(x))) for x in grid])
    at_zero = float(f(0.0))

    if not np.all(np.isfinite(values)) or not np.isfinite(at_zero):
        raise InvalidKato("range", "f is not finite on the grid")
    tol = settings.pass_tol
    if np.any(values < -tol) or np.any(values > 1 + tol):
        worst = float(grid[np.argmax(np.maximum(values - 1, -values))])
        raise InvalidKato("range", f"0 <= f(s) <= 1 fails at s = {worst:.3g}")
    if abs(at_zero - 1.0) > tol:
        raise InvalidKato("normalization", f"f(0) = {at_zero} != 1")

    derivative = (values[0] - at_zero) / grid[0]
    if abs(derivative + 1.0) > settings.kato_derivative_tol:
        raise InvalidKato("derivative", f"f'(+0) ~ {derivative:.6g} != -1")

    # The sup includes the x -> +0 limit, which the derivative clause pins to 1.
    gamma = max(float(np.max((1.0 - values) / grid)), 1.0)
    if not np.isfinite(gamma) or gamma < 1.0 - GAMMA_TOL:
        raise InvalidKato("gamma", f"gamma[f] = {gamma} is not >= 1")

    logger.debug("Validated Kato function %s: gamma=%.12g", id, gamma)
    return KatoFunction(id=id, func=f, gamma=gamma, derivative_at_zero=float(derivative))


def _exp(s: Any) -> Any:
    return np.exp(-np.asarray(s, dtype=float))


def _resolvent_power(k: int) -> ScalarMap:
    def f(s: Any) -> Any:
        return (1.0 + np.asarray(s, dtype=float) / k) ** (-k)

    return f


def _clipped_linear(s: Any) -> Any:
    return np.maximum(0.0, 1.0 - np.asarray(s, dtype=float))


KATO_REGISTRY: dict[str, ScalarMap] = {
    "exp": _exp,
    "resolvent-1": _resolvent_power(1),
    "resolvent-2": _resolvent_power(2),
    "resolvent-4": _resolvent_power(4),
    "clipped-linear": _clipped_linear,
}


def get_kato(id: str) -> KatoFunction:
    """Validated built-in Kato function by registry id."""
    try:
        f = KATO_REGISTRY[id]
    except KeyError:
        raise ValueError(
            f"Unknown Kato function '{id}'. Available: {', '.join(KATO_REGISTRY)}"
        ) from None
    return validate_kato(f, id=id)
