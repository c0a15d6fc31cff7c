"""Resolvent-difference checkers.

Every checker compares resolvents of S(tau) = (1 - F(tau))/tau with those of
the generator H. Estimators return the grid maximum of lhs / scale as the
empirical constant; asserted bounds compare against a closed-form right side.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from src.analysis.numerical_range import SectorSpec, dist_to_neg_sector
from src.bounds.models import BoundReport
from src.config.constants import BoundId, RegularityKind
from src.config.settings import settings
from src.errors import BadGrid, RegularityMismatch, ZetaOutOfSector
from src.families.chernoff import ChernoffFamily, eval_F, eval_S
from src.linalg.operators import Operator, hermitian_eig, operator_norm, resolvent_shift

logger = logging.getLogger(__name__)


def resolvent_gap(S: Operator, H: Operator, t: float = 1.0, zeta: complex = 1.0) -> float:
    """||(zeta + tS)^-1 - (zeta + tH)^-1||."""
    return operator_norm(resolvent_shift(S * t, zeta) - resolvent_shift(H * t, zeta))


def _unit_grid(values: Sequence[float], name: str) -> list[float]:
    grid = [float(v) for v in values]
    if not grid:
        raise BadGrid(f"{name} must be nonempty")
    if any(not 0.0 < v <= 1.0 for v in grid):
        raise BadGrid(f"{name} must lie in (0, 1], got {grid}")
    return grid


def _positive_grid(values: Sequence[float], name: str, lower: float = 0.0) -> list[float]:
    grid = [float(v) for v in values]
    if not grid:
        raise BadGrid(f"{name} must be nonempty")
    if any(not (v > 0.0 and v >= lower and math.isfinite(v)) for v in grid):
        raise BadGrid(f"{name} must be finite and >= {lower:g} (and > 0), got {grid}")
    return grid


def _require_self_adjoint(fam: ChernoffFamily, bound: str) -> None:
    if fam.regularity.kind != RegularityKind.SELF_ADJOINT:
        raise RegularityMismatch(f"{bound} needs a self-adjoint family, got {fam.regularity}")


def _estimated(
    bound_id: BoundId,
    rows: list[tuple[dict, float, float]],
    name: str,
) -> tuple[float, list[BoundReport]]:
    """Constant = max lhs/scale over (params, lhs, scale) rows; reports at that constant."""
    constant = max((lhs / scale for _, lhs, scale in rows if scale > 0), default=0.0)
    reports = [
        BoundReport.evaluate(
            bound_id, lhs=lhs, rhs=constant * scale, params=params, constants={name: constant}
        )
        for params, lhs, scale in rows
    ]
    return constant, reports


def check_resolvent_rate(
    fam: ChernoffFamily,
    H: Operator | None,
    rho: float,
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
) -> tuple[float, list[BoundReport]]:
    """M_rho = max over 0 < tau <= t <= 1 of ||(1+tS(tau))^-1 - (1+tH)^-1|| / (tau/t)^rho."""
    if not 0.0 < rho <= 1.0:
        raise BadGrid(f"rho must lie in (0, 1], got {rho}")
    H = fam.generator if H is None else H
    taus, ts = _unit_grid(tau_grid, "tau_grid"), _unit_grid(t_grid, "t_grid")

    rows = []
    for tau in taus:
        paired = [t for t in ts if tau <= t]
        if not paired:
            continue
        S = eval_S(fam, tau)
        for t in paired:
            rows.append(({"tau": tau, "t": t, "rho": rho}, resolvent_gap(S, H, t), (tau / t) ** rho))
    if not rows:
        raise BadGrid("No grid pairs with tau <= t")
    return _estimated(BoundId.RESOLVENT_RATE, rows, "M_rho")


def check_tau_linear_resolvent(
    fam: ChernoffFamily, H: Operator | None, tau_grid: Sequence[float]
) -> tuple[float, list[BoundReport]]:
    """M_1 = max over tau of ||(1+S(tau))^-1 - (1+H)^-1|| / tau."""
    H = fam.generator if H is None else H
    rows = [
        ({"tau": tau}, resolvent_gap(eval_S(fam, tau), H), tau)
        for tau in _unit_grid(tau_grid, "tau_grid")
    ]
    return _estimated(BoundId.TAU_LINEAR_RESOLVENT, rows, "M_1")


def _check_zetas(zeta_list: Sequence[complex], sector: SectorSpec) -> list[tuple[complex, float]]:
    if not zeta_list:
        raise BadGrid("zeta_list must be nonempty")
    checked = []
    for zeta in (complex(z) for z in zeta_list):
        if zeta == 0 or abs(math.atan2(zeta.imag, zeta.real)) >= math.pi - sector.alpha:
            raise ZetaOutOfSector(
                f"zeta = {zeta} is outside the open sector |arg z| < pi - {sector.alpha:.6g}"
            )
        checked.append((zeta, dist_to_neg_sector(zeta, sector)))
    return checked


def check_sectorial_resolvent(
    fam: ChernoffFamily,
    H: Operator | None,
    alpha: float,
    zeta_list: Sequence[complex],
    tau_grid: Sequence[float],
) -> tuple[float, list[BoundReport]]:
    """L = max over (zeta, tau) of ||(zeta+S(tau))^-1 - (zeta+H)^-1|| dist(zeta, -S_a) / tau."""
    H = fam.generator if H is None else H
    zetas = _check_zetas(zeta_list, SectorSpec(alpha))
    rows = []
    for tau in _positive_grid(tau_grid, "tau_grid"):
        S = eval_S(fam, tau)
        for zeta, dist in zetas:
            params = {"tau": tau, "zeta": [zeta.real, zeta.imag], "alpha": alpha}
            rows.append((params, resolvent_gap(S, H, 1.0, zeta), tau / dist))
    return _estimated(BoundId.SECTORIAL_RESOLVENT, rows, "L")


def check_scaled_sectorial_resolvent(
    fam: ChernoffFamily,
    H: Operator | None,
    alpha: float,
    zeta_list: Sequence[complex],
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
) -> tuple[float, list[BoundReport]]:
    """L^I = max over (zeta, tau) of sup_t ||(zeta+tS)^-1 - (zeta+tH)^-1|| dist / tau."""
    H = fam.generator if H is None else H
    zetas = _check_zetas(zeta_list, SectorSpec(alpha))
    ts = [float(t) for t in t_grid]
    if not ts or any(t < 0 for t in ts):
        raise BadGrid(f"t_grid must be nonempty and nonnegative, got {ts}")
    rows = []
    for tau in _positive_grid(tau_grid, "tau_grid"):
        S = eval_S(fam, tau)
        for zeta, dist in zetas:
            gaps = [resolvent_gap(S, H, t, zeta) for t in ts]
            k = int(np.argmax(gaps))
            params = {"tau": tau, "zeta": [zeta.real, zeta.imag], "alpha": alpha, "argmax_t": ts[k]}
            rows.append((params, gaps[k], tau / dist))
    return _estimated(BoundId.SECTORIAL_SCALED_RESOLVENT, rows, "L_I")


def check_strict_contraction(
    fam: ChernoffFamily, eps: float, tau_grid: Sequence[float]
) -> tuple[float, list[BoundReport]]:
    """delta = min over tau >= eps of 1 - ||F(tau)||; each report needs ||F(tau)|| <= 1 - floor."""
    _require_self_adjoint(fam, "Strict contraction")
    if eps <= 0:
        raise BadGrid(f"eps must be > 0, got {eps}")
    taus = _positive_grid(tau_grid, "tau_grid", lower=eps)

    norms = [operator_norm(eval_F(fam, tau)) for tau in taus]
    delta = float(min(1.0 - v for v in norms))
    rhs = 1.0 - settings.strict_contraction_floor
    reports = [
        BoundReport.evaluate(
            BoundId.STRICT_CONTRACTION,
            lhs=norm,
            rhs=rhs,
            params={"tau": tau, "eps": eps},
            constants={"delta": delta},
        )
        for tau, norm in zip(taus, norms, strict=True)
    ]
    return delta, reports


def check_interval_transfer(
    fam: ChernoffFamily,
    a: float,
    b: float,
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
) -> list[BoundReport]:
    """||(1+tS)^-1 - (1+tH)^-1|| <= b (1 + 2/a)^2 ||(1+S)^-1 - (1+H)^-1|| for t in [a, b]."""
    _require_self_adjoint(fam, "Interval transfer")
    if not 0 < a <= b:
        raise BadGrid(f"Need 0 < a <= b, got [{a}, {b}]")
    ts = [float(t) for t in t_grid]
    if not ts or any(not a <= t <= b for t in ts):
        raise BadGrid(f"t_grid must lie in [{a}, {b}], got {ts}")
    factor = b * (1.0 + 2.0 / a) ** 2
    H = fam.generator
    reports = []
    for tau in _positive_grid(tau_grid, "tau_grid"):
        S = eval_S(fam, tau)
        unit_gap = resolvent_gap(S, H)
        for t in ts:
            reports.append(
                BoundReport.evaluate(
                    BoundId.INTERVAL_TRANSFER,
                    lhs=resolvent_gap(S, H, t),
                    rhs=factor * unit_gap,
                    params={"tau": tau, "t": t, "a": a, "b": b},
                )
            )
    return reports


def check_infinite_interval(
    fam: ChernoffFamily,
    eps: float,
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
) -> list[BoundReport]:
    """||(1+tS)^-1 - (1+tH)^-1|| <= M_1 (1+mu_e)(1+mu)/(mu_e mu) tau/t for tau < eps, t > 0.

    M_1 comes from the tau-linear estimate on the same tau grid, mu is the
    bottom of the spectrum of H and mu_e the bottom of S(tau) over the grid.
    """
    _require_self_adjoint(fam, "Infinite-interval resolvent bound")
    taus = _unit_grid(tau_grid, "tau_grid")
    if any(tau >= eps for tau in taus):
        raise BadGrid(f"tau_grid must lie below eps = {eps}")
    ts = _positive_grid(t_grid, "t_grid")

    H = fam.generator
    mu = hermitian_eig(H).min_eigenvalue
    S_by_tau = {tau: eval_S(fam, tau) for tau in taus}
    mu_eps = min(hermitian_eig(S).min_eigenvalue for S in S_by_tau.values())
    if mu <= 0 or mu_eps <= 0:
        raise RegularityMismatch(
            f"Needs H >= mu > 0 and S(tau) >= mu_eps > 0, got mu={mu:.3e}, mu_eps={mu_eps:.3e}"
        )
    m1, _ = check_tau_linear_resolvent(fam, H, taus)
    constant = m1 * (1 + mu_eps) * (1 + mu) / (mu_eps * mu)
    constants = {"M_1": m1, "mu": mu, "mu_eps": mu_eps, "M_inf": constant}

    return [
        BoundReport.evaluate(
            BoundId.INFINITE_INTERVAL,
            lhs=resolvent_gap(S, H, t),
            rhs=constant * tau / t,
            params={"tau": tau, "t": t, "eps": eps},
            constants=constants,
        )
        for tau, S in S_by_tau.items()
        for t in ts
    ]
