"""Chernoff approximants F(t/n)^n and their operator-norm error against e^{-tH}."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from src.config.constants import MIN_FIT_SAMPLES
from src.config.settings import settings
from src.errors import AllBelowFloor, BadInterval, NegativeTau, TooFewSamples
from src.families.chernoff import ChernoffFamily, eval_F, eval_S
from src.linalg.operators import Operator, matrix_exp, matrix_power, operator_norm

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["family_id", "t", "n", "error", "bound", "margin", "t_lo", "t_hi", "t_grid"]


@dataclass(frozen=True)
class TInterval:
    """Closed interval [lo, hi] sampled on a uniform grid of ``grid`` points."""

    lo: float
    hi: float
    grid: int | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise BadInterval(f"Interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo < 0 or self.hi < self.lo:
            raise BadInterval(f"Need 0 <= lo <= hi, got [{self.lo}, {self.hi}]")
        if self.grid is not None and self.grid < 2:
            raise BadInterval(f"t-grid needs at least 2 points, got {self.grid}")

    @property
    def size(self) -> int:
        return settings.t_grid_size if self.grid is None else self.grid

    def points(self) -> np.ndarray:
        """Uniform grid including both endpoints; a single point when lo == hi."""
        if self.lo == self.hi:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.size)

    def __str__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


@dataclass(frozen=True)
class RateFit:
    """error ~ C / n^rho."""

    C: float
    rho: float
    residual: float  # max |log deviation|

    def to_dict(self) -> dict[str, float]:
        return {"C": self.C, "rho": self.rho, "residual": self.residual}


@dataclass(frozen=True)
class ErrorSample:
    n: int
    error: float
    t: float  # evaluation time, the maximizing t for interval curves


@dataclass
class ErrorCurve:
    """(n, error) samples for one family at a fixed t or over an interval."""

    family_id: str
    t: float | TInterval
    samples: list[ErrorSample]
    fitted: RateFit | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ns = [s.n for s in self.samples]
        if any(b <= a for a, b in zip(ns, ns[1:], strict=False)):
            raise ValueError(f"ErrorCurve samples need strictly increasing n, got {ns}")
        if any(not math.isfinite(s.error) or s.error < 0 for s in self.samples):
            raise ValueError("ErrorCurve errors must be finite and nonnegative")

    @property
    def ns(self) -> np.ndarray:
        return np.array([s.n for s in self.samples], dtype=float)

    @property
    def errors(self) -> np.ndarray:
        return np.array([s.error for s in self.samples])

    @property
    def usable(self) -> int:
        return int(np.sum(self.errors > settings.error_floor))

    def to_frame(self) -> pd.DataFrame:
        rows = len(self.samples)
        frame = pd.DataFrame(
            {
                "family_id": [self.family_id] * rows,
                "t": [s.t for s in self.samples],
                "n": [s.n for s in self.samples],
                "error": [s.error for s in self.samples],
            }
        )
        # Interval curves carry their descriptor so a reload can rebuild it.
        if isinstance(self.t, TInterval):
            frame["t_lo"] = [self.t.lo] * rows
            frame["t_hi"] = [self.t.hi] * rows
            frame["t_grid"] = pd.array([self.t.grid] * rows, dtype="Int64")
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, t: float | TInterval | None = None) -> "ErrorCurve":
        """Rebuild a curve from its CSV rows (one family)."""
        ids = frame["family_id"].unique()
        if len(ids) != 1:
            raise ValueError(f"Expected rows of a single family, got {list(ids)}")
        samples = [
            ErrorSample(n=int(row.n), error=float(row.error), t=float(row.t))
            for row in frame.itertuples(index=False)
        ]
        curve = cls(
            family_id=str(ids[0]),
            t=_frame_t(frame, samples) if t is None else t,
            samples=samples,
        )
        if curve.usable >= MIN_FIT_SAMPLES:
            curve.fitted = fit_rate(curve)
        return curve

    def to_dict(self) -> dict[str, Any]:
        return {
            "family_id": self.family_id,
            "t": str(self.t) if isinstance(self.t, TInterval) else self.t,
            "samples": [{"n": s.n, "error": s.error, "t": s.t} for s in self.samples],
            "fitted": self.fitted.to_dict() if self.fitted else None,
        }


def _frame_t(frame: pd.DataFrame, samples: list[ErrorSample]) -> float | TInterval:
    """The curve's t: the interval descriptor when present, else the shared sample t."""
    if "t_lo" not in frame or frame["t_lo"].isna().all():
        return samples[0].t
    first = frame.iloc[0]
    grid = None if pd.isna(first["t_grid"]) else int(first["t_grid"])
    return TInterval(float(first["t_lo"]), float(first["t_hi"]), grid)


@dataclass(frozen=True)
class ErrorDecomposition:
    """Total error and the two pieces of its triangle-inequality split."""

    total: float
    power_vs_scaled_exp: float  # ||F(t/n)^n - e^{-tS(t/n)}||
    scaled_exp_vs_exact: float  # ||e^{-tS(t/n)} - e^{-tH}||

    @property
    def slack(self) -> float:
        return self.power_vs_scaled_exp + self.scaled_exp_vs_exact - self.total


def _check_args(t: float, n: int) -> None:
    if t < 0:
        raise NegativeTau(f"t must be >= 0, got {t}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def exact_semigroup(fam: ChernoffFamily, t: float) -> Operator:
    """e^{-tH} for the family's generator."""
    return matrix_exp(fam.generator, t)


def chernoff_power(fam: ChernoffFamily, t: float, n: int) -> Operator:
    """F(t/n)^n."""
    _check_args(t, n)
    if t == 0:
        return Operator.identity(fam.dim)
    return matrix_power(eval_F(fam, t / n), n)


def approximation_error(fam: ChernoffFamily, t: float, n: int) -> float:
    """||F(t/n)^n - e^{-tH}||."""
    _check_args(t, n)
    if t == 0:
        return 0.0
    return operator_norm(chernoff_power(fam, t, n) - exact_semigroup(fam, t))


def error_decomposition(fam: ChernoffFamily, t: float, n: int) -> ErrorDecomposition:
    _check_args(t, n)
    if t == 0:
        return ErrorDecomposition(0.0, 0.0, 0.0)
    power = chernoff_power(fam, t, n)
    exact = exact_semigroup(fam, t)
    scaled = matrix_exp(eval_S(fam, t / n), t)
    return ErrorDecomposition(
        total=operator_norm(power - exact),
        power_vs_scaled_exp=operator_norm(power - scaled),
        scaled_exp_vs_exact=operator_norm(scaled - exact),
    )


def sup_error(
    fam: ChernoffFamily,
    interval: TInterval | tuple[float, float],
    t_grid_size: int | None = None,
    n: int = 1,
) -> tuple[float, float]:
    """Grid maximum of approximation_error over the interval and its first argmax."""
    if not isinstance(interval, TInterval):
        interval = TInterval(interval[0], interval[1], t_grid_size)
    elif t_grid_size is not None:
        interval = TInterval(interval.lo, interval.hi, t_grid_size)

    best, best_t = -1.0, interval.lo
    for t in interval.points():
        err = approximation_error(fam, float(t), n)
        if err > best:
            best, best_t = err, float(t)
    return best, best_t


def _validate_n_list(n_list: list[int] | tuple[int, ...]) -> None:
    if not n_list:
        raise ValueError("n_list must be nonempty")
    if any(n < 1 for n in n_list):
        raise ValueError(f"n_list entries must be >= 1, got {list(n_list)}")
    if any(b <= a for a, b in zip(n_list, n_list[1:], strict=False)):
        raise ValueError(f"n_list must be strictly ascending, got {list(n_list)}")


def evaluate_sample(fam: ChernoffFamily, t: float | TInterval, n: int) -> ErrorSample:
    """One (n, error) sample at a fixed t or as an interval supremum."""
    if isinstance(t, TInterval):
        err, at = sup_error(fam, t, n=n)
        return ErrorSample(n=n, error=err, t=at)
    return ErrorSample(n=n, error=approximation_error(fam, t, n), t=float(t))


def assemble_curve(
    family_id: str, t: float | TInterval, samples: list[ErrorSample]
) -> ErrorCurve:
    """Build a curve from ordered samples and fit when enough are above the floor."""
    curve = ErrorCurve(family_id=family_id, t=t, samples=samples)
    if curve.usable >= MIN_FIT_SAMPLES:
        curve.fitted = fit_rate(curve)
    return curve


def error_curve(
    fam: ChernoffFamily, t: float | TInterval, n_list: list[int] | tuple[int, ...]
) -> ErrorCurve:
    """One sample per n via approximation_error (fixed t) or sup_error (interval)."""
    _validate_n_list(n_list)
    samples = [evaluate_sample(fam, t, n) for n in n_list]
    return assemble_curve(fam.family_id, t, samples)


def fit_power_law(ns: np.ndarray, errors: np.ndarray) -> RateFit:
    """Least-squares fit of log error = log C - rho log n over samples above the floor."""
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    mask = errors > settings.error_floor
    if not np.any(mask):
        raise AllBelowFloor(
            f"All {errors.size} errors are <= {settings.error_floor:g}; the family is exact"
        )
    if int(mask.sum()) < MIN_FIT_SAMPLES:
        raise TooFewSamples(
            f"Rate fit needs {MIN_FIT_SAMPLES} samples above the floor, got {int(mask.sum())}"
        )
    log_n, log_e = np.log(ns[mask]), np.log(errors[mask])
    slope, intercept = np.polyfit(log_n, log_e, 1)
    residual = float(np.max(np.abs(log_e - (intercept + slope * log_n))))
    return RateFit(C=float(np.exp(intercept)), rho=float(-slope), residual=residual)


def fit_rate(curve: ErrorCurve) -> RateFit:
    return fit_power_law(curve.ns, curve.errors)


def refinement_violations(curve: ErrorCurve, slack: float = 1e-12) -> list[tuple[int, int]]:
    """Consecutive (n, n') pairs where the error grows by more than ``slack``."""
    violations = []
    for prev, nxt in zip(curve.samples, curve.samples[1:], strict=False):
        if nxt.error > prev.error + slack:
            logger.warning(
                "Refinement not monotone for %s: error(%d)=%.3e > error(%d)=%.3e",
                curve.family_id,
                nxt.n,
                nxt.error,
                prev.n,
                prev.error,
            )
            violations.append((prev.n, nxt.n))
    return violations


def scaled_spread(curve: ErrorCurve, rho: float = 1.0) -> float:
    """max/min of n^rho * error over the samples above the floor."""
    mask = curve.errors > settings.error_floor
    if not np.any(mask):
        raise AllBelowFloor("No samples above the floor")
    scaled = curve.ns[mask] ** rho * curve.errors[mask]
    return float(np.max(scaled) / np.min(scaled))
