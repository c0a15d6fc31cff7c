"""Application settings using Pydantic Settings."""

import os
from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical tolerances and runner defaults with environment variable support.

    Every field can be overridden with a ``CHERNOFF_KIT_`` prefixed variable,
    e.g. ``CHERNOFF_KIT_THREADS=4``.
    """

    model_config = SettingsConfigDict(
        env_prefix="CHERNOFF_KIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    log_level: str = "INFO"
    threads: int = 0  # 0 = one worker per CPU
    output_dir: str = "./runs"

    # Linear algebra
    hermitian_tol: float = 1e-10  # relative to 1 + ||H||
    singularity_tol: float = 1e-12

    # Numerical range
    membership_tol: float = 1e-9
    range_points: int = 360

    # Approximants
    t_grid_size: int = 101
    error_floor: float = 1e-14

    # Bound reports
    pass_tol: float = 1e-10
    strict_contraction_floor: float = 1e-8

    # Kato validation grid
    kato_grid_min: float = 1e-6
    kato_grid_max: float = 1e3
    kato_grid_points: int = 400
    kato_derivative_tol: float = 1e-4

    @field_validator(
        "hermitian_tol",
        "singularity_tol",
        "membership_tol",
        "error_floor",
        "pass_tol",
        "strict_contraction_floor",
        "kato_grid_min",
        "kato_derivative_tol",
    )
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("Tolerances must be positive")
        return v

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 0:
            raise ValueError("threads must be >= 0 (0 = auto)")
        return v

    @field_validator("range_points")
    @classmethod
    def validate_range_points(cls, v: int) -> int:
        if v < 8:
            raise ValueError("range_points must be >= 8")
        return v

    @field_validator("t_grid_size", "kato_grid_points")
    @classmethod
    def validate_grid_size(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Grids need at least 2 points")
        return v

    @property
    def worker_count(self) -> int:
        return self.threads or (os.cpu_count() or 1)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
