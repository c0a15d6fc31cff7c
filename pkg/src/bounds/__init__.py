"""Bound checkers, their reports and the bound-id registry."""

from .models import BoundReport, summary_line
from .spectral import (
    check_cube_root_bound,
    check_spectral_bound,
    check_sqrt_n_lemma,
    estimate_K,
)
from .resolvent import (
    check_resolvent_rate,
    check_sectorial_resolvent,
    check_strict_contraction,
    check_tau_linear_resolvent,
)
from .semigroup import (
    check_nonsym_trotter_kato,
    check_scaled_resolvent_decay,
    check_sectorial_scaled_semigroup,
    estimate_lemma321_constant,
)
from .registry import BOUND_REGISTRY, SuiteContext, run_suite

__all__ = [
    "BoundReport",
    "summary_line",
    "check_cube_root_bound",
    "check_spectral_bound",
    "check_sqrt_n_lemma",
    "estimate_K",
    "check_resolvent_rate",
    "check_sectorial_resolvent",
    "check_strict_contraction",
    "check_tau_linear_resolvent",
    "check_nonsym_trotter_kato",
    "check_scaled_resolvent_decay",
    "check_sectorial_scaled_semigroup",
    "estimate_lemma321_constant",
    "BOUND_REGISTRY",
    "SuiteContext",
    "run_suite",
]
