"""Scenario execution: build the family, sample error curves, run the bound suite."""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from src.analysis.approximants import (
    ErrorCurve,
    ErrorSample,
    assemble_curve,
    evaluate_sample,
    refinement_violations,
)
from src.bounds.models import BoundReport, summary_line
from src.bounds.registry import SuiteContext, run_suite
from src.config.constants import RegularityKind
from src.errors import ChernoffKitError
from src.families.chernoff import ChernoffFamily
from src.families.specs import build_family
from src.runner.models import Scenario
from src.runner.pool import run_parallel
from src.runner.writers import write_artifacts

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2


@dataclass
class ScenarioResult:
    """Outcome of one scenario run."""

    exit_code: int
    out_dir: Path
    curves: list[ErrorCurve] = field(default_factory=list)
    reports: list[BoundReport] = field(default_factory=list)
    error: str | None = None

    @property
    def summary(self) -> str:
        return summary_line(self.reports)


def sample_curve(
    family: ChernoffFamily, scenario: Scenario, workers: int | None = None
) -> ErrorCurve:
    """One error sample per n, evaluated concurrently and collected in n order."""
    t = scenario.t_value
    samples: list[ErrorSample] = run_parallel(
        lambda n: evaluate_sample(family, t, n), scenario.n_list, workers
    )
    curve = assemble_curve(family.family_id, t, samples)
    if family.regularity.kind == RegularityKind.SELF_ADJOINT:
        refinement_violations(curve)
    return curve


def run_scenario(
    scenario: Scenario,
    workers: int | None = None,
    include_curve: bool = True,
    include_bounds: bool = True,
) -> ScenarioResult:
    """Run a scenario and write its artifacts.

    Exit codes: 0 when every report passes, 1 when any bound is violated,
    2 when the configuration is invalid (including failed hypotheses).
    """
    out_dir = Path(scenario.out_dir)
    logger.info("Running scenario %s (seed=%s)", scenario.name, scenario.seed)

    try:
        family = build_family(scenario.family, scenario.seed)
        curves = [sample_curve(family, scenario, workers)] if include_curve else []
        reports: list[BoundReport] = []
        if include_bounds and scenario.bounds:
            ctx = SuiteContext(
                family=family,
                n_list=scenario.n_list,
                t=scenario.t_value,
                alpha=scenario.alpha,
                seed=scenario.seed,
                options=scenario.options,
            )
            reports = run_suite(ctx, scenario.bounds, workers)
    except ChernoffKitError as e:
        logger.error("Scenario %s is invalid: %s", scenario.name, e)
        return ScenarioResult(EXIT_CONFIG, out_dir, error=str(e))

    write_artifacts(out_dir, scenario.name, curves, reports)
    exit_code = EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION
    result = ScenarioResult(exit_code, out_dir, curves, reports)
    logger.info("Scenario %s finished: %s", scenario.name, result.summary)
    return result


def run_sweep(
    scenario: Scenario, seeds: int, workers: int | None = None
) -> list[tuple[int, ScenarioResult]]:
    """Rerun ``scenario`` with seeds seed, seed+1, ...; one sub-directory per seed."""
    if seeds < 1:
        raise ValueError(f"seeds must be >= 1, got {seeds}")
    base = scenario.seed or 0
    root = Path(scenario.out_dir)
    results = []
    for offset in range(seeds):
        seed = base + offset
        variant = scenario.with_overrides(seed=seed, out_dir=str(root / f"seed-{seed}"))
        results.append((seed, run_scenario(variant, workers)))

    root.mkdir(parents=True, exist_ok=True)
    lines = [
        f"seed {seed}: exit {result.exit_code} {result.summary}"
        + (f" ({result.error})" if result.error else "")
        for seed, result in results
    ]
    (root / "sweep_summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return results
