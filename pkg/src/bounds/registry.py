"""Bound-id registry and the suite runner.

Each BoundId maps to exactly one checker plus a runner that derives the
checker's grids from a SuiteContext. Runners execute concurrently and the
reports are merged in (bound_id, parameter) order.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from src.analysis.approximants import TInterval
from src.bounds import resolvent, semigroup, spectral
from src.bounds.models import BoundReport
from src.config.constants import BOUND_DESCRIPTIONS, BoundId, RegularityKind
from src.errors import ScenarioError
from src.families.chernoff import ChernoffFamily, eval_F
from src.linalg import generators
from src.linalg.operators import Operator
from src.runner.pool import run_parallel

logger = logging.getLogger(__name__)

DEFAULT_TAU_GRID: tuple[float, ...] = tuple(2.0**-k for k in range(0, 7))
DEFAULT_ZETAS: tuple[complex, ...] = (1.0, 1j, -0.5 + 1j)


@dataclass
class SuiteContext:
    """Everything a bound runner may draw its parameters from.

    ``options`` carries per-scenario overrides: tau, tau_grid, t_grid, rho,
    eps, zeta, delta, pairs, n_max.
    """

    family: ChernoffFamily
    n_list: list[int]
    t: float | TInterval = 1.0
    alpha: float | None = None
    seed: int | None = None
    options: dict[str, Any] = field(default_factory=dict)

    @property
    def t_fixed(self) -> float:
        return self.t.hi if isinstance(self.t, TInterval) else float(self.t)

    @property
    def interval(self) -> TInterval:
        return self.t if isinstance(self.t, TInterval) else TInterval(0.0, float(self.t))

    @property
    def resolved_alpha(self) -> float | None:
        """Scenario alpha, else the angle declared by a quasi-sectorial regularity."""
        return self.alpha if self.alpha is not None else self.family.regularity.alpha

    @property
    def sector_alpha(self) -> float:
        alpha = self.resolved_alpha
        if alpha is not None:
            return alpha
        if self.family.regularity.kind is RegularityKind.SELF_ADJOINT:
            return 0.0
        raise ScenarioError(
            f"Sectorial bounds need alpha for a {self.family.regularity.kind.value} family"
        )

    @property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(0 if self.seed is None else self.seed)

    def option(self, name: str, default: Any) -> Any:
        return self.options.get(name, default)

    def tau_grid(self) -> list[float]:
        return [float(v) for v in self.option("tau_grid", DEFAULT_TAU_GRID)]

    def zetas(self) -> list[complex]:
        raw = self.option("zeta", None)
        if raw is None:
            return list(DEFAULT_ZETAS)
        return [complex(z[0], z[1]) if isinstance(z, list | tuple) else complex(z) for z in raw]


def _run_spectral(ctx: SuiteContext) -> list[BoundReport]:
    t = ctx.t_fixed
    return [spectral.check_spectral_bound(eval_F(ctx.family, t / n), n) for n in ctx.n_list]


def _run_sqrt_n(ctx: SuiteContext) -> list[BoundReport]:
    t, rng = ctx.t_fixed, ctx.rng
    return [
        spectral.check_sqrt_n_lemma(
            eval_F(ctx.family, t / n), n, generators.random_unit_vector(rng, ctx.family.dim)
        )
        for n in ctx.n_list
    ]


def _sample_contraction(ctx: SuiteContext) -> tuple[Operator, int]:
    tau = float(ctx.option("tau", 0.5))
    n_max = int(ctx.option("n_max", max(ctx.n_list)))
    return eval_F(ctx.family, tau), n_max


def _run_k_estimate(ctx: SuiteContext) -> list[BoundReport]:
    F, n_max = _sample_contraction(ctx)
    _, reports = spectral.estimate_K(F, n_max, ctx.resolved_alpha)
    return reports


def _run_cube_root(ctx: SuiteContext) -> list[BoundReport]:
    F, n_max = _sample_contraction(ctx)
    k_hat, _ = spectral.estimate_K(F, n_max, ctx.resolved_alpha)
    return [spectral.check_cube_root_bound(F, n, k_hat, ctx.resolved_alpha) for n in ctx.n_list]


def _run_resolvent_rate(ctx: SuiteContext) -> list[BoundReport]:
    grid = ctx.tau_grid()
    _, reports = resolvent.check_resolvent_rate(
        ctx.family, None, float(ctx.option("rho", 1.0)), grid, grid
    )
    return reports


def _run_tau_linear(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = resolvent.check_tau_linear_resolvent(ctx.family, None, ctx.tau_grid())
    return reports


def _run_sectorial_resolvent(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = resolvent.check_sectorial_resolvent(
        ctx.family, None, ctx.sector_alpha, ctx.zetas(), ctx.tau_grid()
    )
    return reports


def _run_strict_contraction(ctx: SuiteContext) -> list[BoundReport]:
    eps = float(ctx.option("eps", 0.5))
    taus = [eps * 2.0**k for k in range(5)]
    _, reports = resolvent.check_strict_contraction(ctx.family, eps, taus)
    return reports


def _random_psd_pairs(ctx: SuiteContext) -> list[tuple[Operator, Operator]]:
    rng, d = ctx.rng, ctx.family.dim
    count = int(ctx.option("pairs", 64))
    return [
        (generators.random_psd(rng, d, 10.0), generators.random_psd(rng, d, 10.0))
        for _ in range(count)
    ]


def _run_lemma_constant(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.estimate_lemma321_constant(_random_psd_pairs(ctx))
    return reports


def _run_nonsym_trotter_kato(ctx: SuiteContext) -> list[BoundReport]:
    A, B = semigroup.trotter_parts(ctx.family)
    return semigroup.check_nonsym_trotter_kato(
        ctx.family.kato_f, ctx.family.kato_g, A, B, ctx.n_list, ctx.t_fixed
    )


def _transfer_window(ctx: SuiteContext) -> tuple[float, float]:
    if isinstance(ctx.t, TInterval) and ctx.t.lo > 0:
        return ctx.t.lo, ctx.t.hi
    return 0.5, 2.0


def _run_interval_transfer(ctx: SuiteContext) -> list[BoundReport]:
    a, b = _transfer_window(ctx)
    return resolvent.check_interval_transfer(
        ctx.family, a, b, ctx.tau_grid(), list(np.linspace(a, b, 5))
    )


def _run_scaled_semigroup(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_scaled_semigroup(ctx.family, [ctx.t_fixed], ctx.n_list)
    return reports


def _run_chernoff_rate(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_chernoff_rate(
        ctx.family, float(ctx.option("rho", 1.0)), ctx.tau_grid(), ctx.n_list
    )
    return reports


def _run_sup_rate(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_sup_rate(
        ctx.family, float(ctx.option("rho", 1.0)), ctx.interval, ctx.n_list
    )
    return reports


def _run_sectorial_sup_rate(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_sup_rate(
        ctx.family, 1.0 / 3.0, ctx.interval, ctx.n_list, bound_id=BoundId.SECTORIAL_SUP_RATE
    )
    return reports


def _run_infinite_interval(ctx: SuiteContext) -> list[BoundReport]:
    eps = float(ctx.option("eps", 0.5))
    taus = [tau for tau in ctx.tau_grid() if tau < eps]
    t_grid = [float(v) for v in ctx.option("t_grid", (0.25, 0.5, 1.0, 2.0, 4.0, 8.0))]
    return resolvent.check_infinite_interval(ctx.family, eps, taus, t_grid)


def _run_semigroup_resolvent_ratio(ctx: SuiteContext) -> list[BoundReport]:
    t_grid = [float(v) for v in ctx.option("t_grid", (0.25, 0.5, 1.0, 2.0, 4.0))]
    _, reports = semigroup.check_semigroup_resolvent_ratio(
        ctx.family, ctx.tau_grid(), t_grid, float(ctx.option("delta", 0.0))
    )
    return reports


def _run_scaled_sectorial_resolvent(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = resolvent.check_scaled_sectorial_resolvent(
        ctx.family,
        None,
        ctx.sector_alpha,
        ctx.zetas(),
        ctx.tau_grid(),
        list(ctx.interval.points()),
    )
    return reports


def _run_sectorial_semigroup(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_sectorial_semigroup(ctx.family, ctx.tau_grid(), ctx.interval)
    return reports


def _run_scaled_resolvent_decay(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_scaled_resolvent_decay(ctx.family, ctx.interval, ctx.n_list)
    return reports


def _run_sectorial_scaled_semigroup(ctx: SuiteContext) -> list[BoundReport]:
    _, reports = semigroup.check_sectorial_scaled_semigroup(ctx.family, ctx.interval, ctx.n_list)
    return reports


@dataclass(frozen=True)
class BoundEntry:
    """One registry row: the checker and the runner feeding it."""

    checker: Callable[..., Any]
    run: Callable[[SuiteContext], list[BoundReport]]

    @property
    def name(self) -> str:
        return self.checker.__name__


BOUND_REGISTRY: dict[BoundId, BoundEntry] = {
    BoundId.SQRT_N_LEMMA: BoundEntry(spectral.check_sqrt_n_lemma, _run_sqrt_n),
    BoundId.K_ESTIMATE: BoundEntry(spectral.estimate_K, _run_k_estimate),
    BoundId.SPECTRAL: BoundEntry(spectral.check_spectral_bound, _run_spectral),
    BoundId.INTERVAL_TRANSFER: BoundEntry(
        resolvent.check_interval_transfer, _run_interval_transfer
    ),
    BoundId.SCALED_SEMIGROUP: BoundEntry(semigroup.check_scaled_semigroup, _run_scaled_semigroup),
    BoundId.SCALED_RESOLVENT_DECAY: BoundEntry(
        semigroup.check_scaled_resolvent_decay, _run_scaled_resolvent_decay
    ),
    BoundId.SECTORIAL_SCALED_RESOLVENT: BoundEntry(
        resolvent.check_scaled_sectorial_resolvent, _run_scaled_sectorial_resolvent
    ),
    BoundId.SECTORIAL_SEMIGROUP: BoundEntry(
        semigroup.check_sectorial_semigroup, _run_sectorial_semigroup
    ),
    BoundId.SECTORIAL_SCALED_SEMIGROUP: BoundEntry(
        semigroup.check_sectorial_scaled_semigroup, _run_sectorial_scaled_semigroup
    ),
    BoundId.RESOLVENT_RATE: BoundEntry(resolvent.check_resolvent_rate, _run_resolvent_rate),
    BoundId.CHERNOFF_RATE: BoundEntry(semigroup.check_chernoff_rate, _run_chernoff_rate),
    BoundId.SUP_RATE: BoundEntry(semigroup.check_sup_rate, _run_sup_rate),
    BoundId.TAU_LINEAR_RESOLVENT: BoundEntry(
        resolvent.check_tau_linear_resolvent, _run_tau_linear
    ),
    BoundId.STRICT_CONTRACTION: BoundEntry(
        resolvent.check_strict_contraction, _run_strict_contraction
    ),
    BoundId.INFINITE_INTERVAL: BoundEntry(
        resolvent.check_infinite_interval, _run_infinite_interval
    ),
    BoundId.CUBE_ROOT: BoundEntry(spectral.check_cube_root_bound, _run_cube_root),
    BoundId.SECTORIAL_RESOLVENT: BoundEntry(
        resolvent.check_sectorial_resolvent, _run_sectorial_resolvent
    ),
    BoundId.SECTORIAL_SUP_RATE: BoundEntry(semigroup.check_sup_rate, _run_sectorial_sup_rate),
    BoundId.SEMIGROUP_RESOLVENT_RATIO: BoundEntry(
        semigroup.check_semigroup_resolvent_ratio, _run_semigroup_resolvent_ratio
    ),
    BoundId.LEMMA_CONSTANT: BoundEntry(
        semigroup.estimate_lemma321_constant, _run_lemma_constant
    ),
    BoundId.TROTTER_KATO_NONSYM: BoundEntry(
        semigroup.check_nonsym_trotter_kato, _run_nonsym_trotter_kato
    ),
}


def describe(bound_id: BoundId) -> str:
    """One-line statement of the inequality checked under ``bound_id``."""
    return BOUND_DESCRIPTIONS[bound_id]


def run_suite(
    ctx: SuiteContext, bound_ids: list[BoundId], workers: int | None = None
) -> list[BoundReport]:
    """Run the selected bounds concurrently and merge the reports deterministically.

    The first checker error is re-raised after every runner has finished.
    """
    unknown = [b for b in bound_ids if b not in BOUND_REGISTRY]
    if unknown:
        raise ScenarioError(f"Unknown bound ids: {unknown}")
    ordered = sorted(dict.fromkeys(bound_ids), key=lambda b: b.value)

    results = run_parallel(
        lambda b: BOUND_REGISTRY[b].run(ctx), ordered, workers, return_exceptions=True
    )

    reports: list[BoundReport] = []
    first_error: BaseException | None = None
    for bound_id, result in zip(ordered, results, strict=True):
        if isinstance(result, BaseException):
            logger.warning("Bound %s failed: %s", bound_id.value, result)
            first_error = first_error or result
            continue
        failing = [r for r in result if not r.passed]
        warned = sum(r.warning for r in result)
        if warned:
            logger.warning("%s: %d reports pass within tolerance only", bound_id.value, warned)
        for r in failing:
            logger.warning(
                "%s violated at %s: lhs=%.6g rhs=%.6g", bound_id.value, r.params, r.lhs, r.rhs
            )
        reports.extend(result)
    if first_error is not None:
        raise first_error
    logger.info("Suite finished: %d reports over %d bounds", len(reports), len(ordered))
    return reports
