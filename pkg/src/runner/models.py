"""Scenario configuration models and loading."""

import json
import logging
import math
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.analysis.approximants import TInterval
from src.config.constants import DEFAULT_N_LIST, BoundId
from src.config.settings import settings
from src.errors import ScenarioError
from src.families.specs import FamilySpec

logger = logging.getLogger(__name__)


class IntervalSpec(BaseModel):
    """t-interval {lo, hi, grid}."""

    lo: float
    hi: float
    grid: int | None = None

    @model_validator(mode="after")
    def check_bounds(self) -> "IntervalSpec":
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"t interval needs 0 <= lo <= hi, got [{self.lo}, {self.hi}]")
        if self.grid is not None and self.grid < 2:
            raise ValueError("t interval grid needs at least 2 points")
        return self

    def to_interval(self) -> TInterval:
        return TInterval(self.lo, self.hi, self.grid)


class Scenario(BaseModel):
    """One experiment: a family, the n refinement, t and the bounds to check."""

    name: str
    family: FamilySpec
    n_list: list[int] = Field(default_factory=lambda: list(DEFAULT_N_LIST))
    t: float | IntervalSpec = 1.0
    alpha: float | None = None
    bounds: list[BoundId] = Field(default_factory=list)
    seed: int | None = None
    out_dir: str = Field(default_factory=lambda: settings.output_dir)
    options: dict[str, Any] = Field(default_factory=dict)

    @field_validator("n_list")
    @classmethod
    def validate_n_list(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("n_list must be nonempty")
        if any(n < 1 for n in v):
            raise ValueError("n_list entries must be >= 1")
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError(f"n_list must be strictly ascending, got {v}")
        return v

    @field_validator("t")
    @classmethod
    def validate_t(cls, v: float | IntervalSpec) -> float | IntervalSpec:
        if isinstance(v, float | int) and (v < 0 or not math.isfinite(v)):
            raise ValueError(f"t must be finite and >= 0, got {v}")
        return v

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: float | None) -> float | None:
        if v is not None and not 0 <= v < math.pi / 2:
            raise ValueError(f"alpha must lie in [0, pi/2), got {v}")
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int | None) -> int | None:
        if v is not None and not 0 <= v < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return v

    @model_validator(mode="after")
    def check_seed_for_random(self) -> "Scenario":
        if self.family.uses_random and self.seed is None:
            raise ValueError("seed is required when the family uses random matrices")
        return self

    @property
    def t_value(self) -> float | TInterval:
        return self.t.to_interval() if isinstance(self.t, IntervalSpec) else float(self.t)

    def with_overrides(self, **updates: Any) -> "Scenario":
        return self.model_copy(update=updates)


def _line_of(text: str, loc: tuple[Any, ...]) -> int | None:
    """Best-effort line of the innermost named key of a validation error."""
    for key in reversed(loc):
        if isinstance(key, str):
            needle = f'"{key}"'
            if needle in text:
                return text[: text.index(needle)].count("\n") + 1
    return None


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """Parse and validate scenario JSON; failures raise ScenarioError with a line number."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{source}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from e
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field_path = ".".join(str(p) for p in first["loc"]) or "<root>"
        line = _line_of(text, tuple(first["loc"]))
        where = f"{source}:{line}" if line is not None else source
        raise ScenarioError(f"{where}: {field_path}: {first['msg']}") from e


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"Cannot read scenario {path}: {e}") from e
    scenario = parse_scenario(text, str(path))
    logger.debug("Loaded scenario %s from %s", scenario.name, path)
    return scenario
