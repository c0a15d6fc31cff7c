"""Pydantic models for bound reports."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.config.constants import BoundId
from src.config.settings import settings


class BoundReport(BaseModel):
    """Measured sides of one inequality at one parameter point."""

    model_config = ConfigDict(populate_by_name=True)

    bound_id: BoundId
    params: dict[str, Any] = Field(default_factory=dict)
    lhs: float
    rhs: float
    margin: float
    passed: bool = Field(alias="pass")
    constants: dict[str, float] = Field(default_factory=dict)

    @classmethod
    def evaluate(
        cls,
        bound_id: BoundId,
        lhs: float,
        rhs: float,
        params: dict[str, Any] | None = None,
        constants: dict[str, float] | None = None,
        tol: float | None = None,
    ) -> "BoundReport":
        """Report with margin rhs - lhs; passes when margin >= -tol.

        The default tolerance is pass_tol * (1 + |rhs|).
        """
        margin = rhs - lhs
        tol = settings.pass_tol * (1.0 + abs(rhs)) if tol is None else tol
        return cls(
            bound_id=bound_id,
            params=params or {},
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            passed=margin >= -tol,
            constants=constants or {},
        )

    @property
    def warning(self) -> bool:
        """Passed only by virtue of the tolerance."""
        return self.passed and self.margin < 0

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


def summary_line(reports: list[BoundReport]) -> str:
    passed = sum(r.passed for r in reports)
    return f"PASS {passed}/{len(reports)}"
