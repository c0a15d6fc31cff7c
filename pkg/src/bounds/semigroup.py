"""Semigroup-difference checkers and constant estimators."""

import logging
import math
from collections.abc import Sequence

import numpy as np

from src.analysis.approximants import (
    TInterval,
    chernoff_power,
    exact_semigroup,
    fit_power_law,
    sup_error,
)
from src.bounds.models import BoundReport
from src.bounds.resolvent import resolvent_gap
from src.config.constants import BoundId, FamilyKind, RegularityKind
from src.config.settings import settings
from src.errors import AllBelowFloor, BadGrid, ChernoffKitError, RegularityMismatch, TooFewSamples
from src.families.chernoff import (
    ChernoffFamily,
    eval_F,
    eval_S,
    kato_factor,
    make_symmetrized_family,
    make_trotter_family,
)
from src.families.kato import KatoFunction, get_kato
from src.linalg.operators import (
    Operator,
    hermitian_eig,
    matrix_exp,
    matrix_power,
    operator_norm,
    resolvent_shift,
)

logger = logging.getLogger(__name__)

# Resolvent differences at or below this are treated as 0/0 pairs
DEGENERATE_FLOOR = 1e-13


def _ratio_constant(
    bound_id: BoundId, rows: list[tuple[dict, float, float]], name: str
) -> tuple[float, list[BoundReport]]:
    """c = max lhs/denominator over rows whose denominator clears the floor."""
    usable = [(p, lhs, den) for p, lhs, den in rows if den > DEGENERATE_FLOOR]
    skipped = len(rows) - len(usable)
    if skipped:
        logger.warning("%s: skipped %d degenerate parameter points", bound_id.value, skipped)
    constant = max((lhs / den for _, lhs, den in usable), default=0.0)
    constants = {name: constant, "skipped": float(skipped)}
    reports = [
        BoundReport.evaluate(bound_id, lhs=lhs, rhs=constant * den, params=p, constants=constants)
        for p, lhs, den in usable
    ]
    return constant, reports


def estimate_lemma321_constant(
    pairs: Sequence[tuple[Operator, Operator]],
) -> tuple[float, list[BoundReport]]:
    """c = max ||e^-K - e^-L|| / ||(1+K)^-1 - (1+L)^-1|| over Hermitian PSD pairs.

    Pairs that are not Hermitian PSD or whose resolvent difference is at the
    floor are skipped with a warning.
    """
    rows = []
    for index, (K, L) in enumerate(pairs):
        try:
            bottoms = [hermitian_eig(X).min_eigenvalue for X in (K, L)]
        except ChernoffKitError as e:
            logger.warning("Pair %d skipped: %s", index, e)
            continue
        if min(bottoms) < -settings.hermitian_tol:
            logger.warning("Pair %d skipped: not positive semi-definite", index)
            continue
        lhs = operator_norm(matrix_exp(K, 1.0) - matrix_exp(L, 1.0))
        den = operator_norm(resolvent_shift(K, 1.0) - resolvent_shift(L, 1.0))
        rows.append(({"pair": index, "dim": K.dim}, lhs, den))

    c_hat, reports = _ratio_constant(BoundId.LEMMA_CONSTANT, rows, "c")
    usable = [(p, lhs / den) for p, lhs, den in rows if den > DEGENERATE_FLOOR]
    if usable:
        best_pair = max(usable, key=lambda item: item[1])[0]["pair"]
        for report in reports:
            report.constants["argmax_pair"] = float(best_pair)
    return c_hat, reports


def check_scaled_semigroup(
    fam: ChernoffFamily, t_list: Sequence[float], n_list: Sequence[int]
) -> tuple[float, list[BoundReport]]:
    """c = max ||e^{-tS(t/n)} - e^{-tH}|| / ||(1+tS(t/n))^-1 - (1+tH)^-1||."""
    H = fam.generator
    rows = []
    for t in t_list:
        if t <= 0:
            raise BadGrid(f"t must be > 0, got {t}")
        exact = exact_semigroup(fam, t)
        for n in n_list:
            S = eval_S(fam, t / n)
            lhs = operator_norm(matrix_exp(S, t) - exact)
            rows.append(({"t": t, "n": n}, lhs, resolvent_gap(S, H, t)))
    return _ratio_constant(BoundId.SCALED_SEMIGROUP, rows, "c")


def check_semigroup_resolvent_ratio(
    fam: ChernoffFamily,
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
    delta: float = 0.0,
) -> tuple[float, list[BoundReport]]:
    """M' = max t e^{-t delta} ||e^{-tS(tau)} - e^{-tH}|| / ||(1+S(tau))^-1 - (1+H)^-1||."""
    H = fam.generator
    ts = [float(t) for t in t_grid]
    if not ts or any(t <= 0 for t in ts):
        raise BadGrid(f"t_grid must be positive, got {ts}")
    exact = {t: exact_semigroup(fam, t) for t in ts}
    rows = []
    for tau in tau_grid:
        if tau <= 0:
            raise BadGrid(f"tau must be > 0, got {tau}")
        S = eval_S(fam, tau)
        unit_gap = resolvent_gap(S, H)
        for t in ts:
            lhs = operator_norm(matrix_exp(S, t) - exact[t])
            rows.append(
                ({"tau": tau, "t": t, "delta": delta}, lhs, unit_gap * math.exp(t * delta) / t)
            )
    return _ratio_constant(BoundId.SEMIGROUP_RESOLVENT_RATIO, rows, "M_prime")


def check_sectorial_semigroup(
    fam: ChernoffFamily, tau_grid: Sequence[float], interval: TInterval
) -> tuple[float, list[BoundReport]]:
    """K^I = max over tau of sup_{t in I} ||e^{-tS(tau)} - e^{-tH}|| / tau."""
    ts = interval.points()
    exact = [exact_semigroup(fam, float(t)) for t in ts]
    rows = []
    for tau in tau_grid:
        if tau <= 0:
            raise BadGrid(f"tau must be > 0, got {tau}")
        S = eval_S(fam, tau)
        gaps = [operator_norm(matrix_exp(S, float(t)) - e) for t, e in zip(ts, exact, strict=True)]
        k = int(np.argmax(gaps))
        rows.append(({"tau": tau, "interval": str(interval), "argmax_t": float(ts[k])}, gaps[k], tau))
    return _ratio_constant(BoundId.SECTORIAL_SEMIGROUP, rows, "K_I")


def _scaled_sup(
    fam: ChernoffFamily, interval: TInterval, n: int, semigroup: bool
) -> tuple[float, float]:
    """sup over t in I, t > 0, of the e^{-tS(t/n)} or (1+tS(t/n))^-1 gap; both vanish at t = 0."""
    H = fam.generator
    best, best_t = 0.0, interval.lo
    for t in interval.points():
        t = float(t)
        if t <= 0:
            continue
        S = eval_S(fam, t / n)
        if semigroup:
            gap = operator_norm(matrix_exp(S, t) - exact_semigroup(fam, t))
        else:
            gap = resolvent_gap(S, H, t)
        if gap > best:
            best, best_t = gap, t
    return best, best_t


def _scaled_sup_rows(
    fam: ChernoffFamily, interval: TInterval, n_list: Sequence[int], semigroup: bool
) -> list[tuple[dict, float, float]]:
    rows = []
    for n in n_list:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        err, at = _scaled_sup(fam, interval, n, semigroup)
        rows.append(({"n": n, "interval": str(interval), "argmax_t": at}, err, 1.0 / n))
    return rows


def check_scaled_resolvent_decay(
    fam: ChernoffFamily, interval: TInterval, n_list: Sequence[int]
) -> tuple[float, list[BoundReport]]:
    """L^I = max_n n sup_{t in I} ||(1+tS(t/n))^-1 - (1+tH)^-1||, with the fitted decay rate."""
    rows = _scaled_sup_rows(fam, interval, n_list, semigroup=False)
    constant, reports = _ratio_constant(BoundId.SCALED_RESOLVENT_DECAY, rows, "L_I")
    try:
        fit = fit_power_law(
            np.array([p["n"] for p, _, _ in rows], dtype=float),
            np.array([lhs for _, lhs, _ in rows]),
        )
    except (AllBelowFloor, TooFewSamples) as e:
        logger.debug("No decay fit for %s: %s", BoundId.SCALED_RESOLVENT_DECAY.value, e)
        return constant, reports
    if fit.rho <= 0:
        logger.warning("Scaled resolvent gap is not decaying: fitted rho=%.3g", fit.rho)
    for report in reports:
        report.constants.update({"rho": fit.rho, "C": fit.C})
    return constant, reports


def check_sectorial_scaled_semigroup(
    fam: ChernoffFamily, interval: TInterval, n_list: Sequence[int]
) -> tuple[float, list[BoundReport]]:
    """K_1^I = max_n n sup_{t in I} ||e^{-tS(t/n)} - e^{-tH}|| for quasi-sectorial families."""
    if fam.regularity.kind == RegularityKind.GENERAL:
        raise RegularityMismatch(
            f"{BoundId.SECTORIAL_SCALED_SEMIGROUP.value} needs a quasi-sectorial family"
        )
    rows = _scaled_sup_rows(fam, interval, n_list, semigroup=True)
    return _ratio_constant(BoundId.SECTORIAL_SCALED_SEMIGROUP, rows, "K_1_I")


def check_chernoff_rate(
    fam: ChernoffFamily, rho: float, tau_grid: Sequence[float], k_list: Sequence[int]
) -> tuple[float, list[BoundReport]]:
    """c_rho = max ||F(tau)^k - e^{-k tau H}|| k^rho over t = k tau <= 1."""
    if not 0 < rho <= 1:
        raise BadGrid(f"rho must lie in (0, 1], got {rho}")
    rows = []
    for tau in tau_grid:
        if not 0 < tau <= 1:
            raise BadGrid(f"tau must lie in (0, 1], got {tau}")
        F = eval_F(fam, tau)
        for k in k_list:
            t = k * tau
            if k < 1 or t > 1.0 + 1e-12:
                continue
            lhs = operator_norm(matrix_power(F, k) - exact_semigroup(fam, t))
            rows.append(({"tau": tau, "k": k, "t": t, "rho": rho}, lhs, (tau / t) ** rho))
    if not rows:
        raise BadGrid("No (tau, k) pairs with k tau <= 1")
    return _ratio_constant(BoundId.CHERNOFF_RATE, rows, "c_rho")


def check_sup_rate(
    fam: ChernoffFamily,
    rho: float,
    interval: TInterval,
    n_list: Sequence[int],
    bound_id: BoundId = BoundId.SUP_RATE,
) -> tuple[float, list[BoundReport]]:
    """c = max_n n^rho sup_{t in I} ||F(t/n)^n - e^{-tH}||.

    With ``BoundId.SECTORIAL_SUP_RATE`` the family must be self-adjoint or
    quasi-sectorial and rho defaults to the cube-root rate by the caller.
    """
    if bound_id == BoundId.SECTORIAL_SUP_RATE and fam.regularity.kind == RegularityKind.GENERAL:
        raise RegularityMismatch(f"{bound_id.value} needs a quasi-sectorial family")
    rows = []
    for n in n_list:
        err, at = sup_error(fam, interval, n=n)
        rows.append(({"n": n, "interval": str(interval), "argmax_t": at, "rho": rho}, err, n**-rho))
    return _ratio_constant(bound_id, rows, "c_rho_I")


def _kato_or_exp(k: KatoFunction | None) -> KatoFunction:
    return get_kato("exp") if k is None else k


def check_nonsym_trotter_kato(
    f: KatoFunction | None,
    g: KatoFunction | None,
    A: Operator,
    B: Operator,
    n_list: Sequence[int],
    t: float,
) -> list[BoundReport]:
    """(f(tA/n) g(tB/n))^n against e^{-tH} and its three-piece decomposition.

    (fg)^n = f g^1/2 F^{n-1} g^1/2 with F the symmetrized family, so
    lhs <= ||F^{n-1} - e^{-tH}|| + 2||(1-g)e^{-tH}|| + ||(1-f)e^{-tH}||.
    """
    if t <= 0:
        raise BadGrid(f"t must be > 0, got {t}")
    f, g = _kato_or_exp(f), _kato_or_exp(g)
    product = make_trotter_family(A, B, f, g)
    symmetrized = make_symmetrized_family(f, g, A, B)
    exact = exact_semigroup(product, t)
    identity = Operator.identity(A.dim)

    rows = []
    for n in n_list:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        tau = t / n
        lhs = operator_norm(chernoff_power(product, t, n) - exact)
        sym_power = matrix_power(eval_F(symmetrized, tau), n - 1)
        pieces = {
            "symmetrized_power": operator_norm(sym_power - exact),
            "g_defect": operator_norm((identity - kato_factor(g, product.spectra["B"], tau)) @ exact),
            "f_defect": operator_norm((identity - kato_factor(f, product.spectra["A"], tau)) @ exact),
        }
        rows.append((n, lhs, pieces))

    ns = np.array([n for n, _, _ in rows], dtype=float)
    constants = {
        "C_A": float(max(n * p["f_defect"] for n, _, p in rows) / f.gamma),
        "C_B": float(max(n * p["g_defect"] for n, _, p in rows) / g.gamma),
    }
    try:
        fit = fit_power_law(ns, np.array([lhs for _, lhs, _ in rows]))
        constants.update({"C": fit.C, "rho": fit.rho, "residual": fit.residual})
    except (AllBelowFloor, TooFewSamples) as e:
        logger.debug("No rate fit for the nonsymmetric product: %s", e)

    return [
        BoundReport.evaluate(
            BoundId.TROTTER_KATO_NONSYM,
            lhs=lhs,
            rhs=pieces["symmetrized_power"] + 2 * pieces["g_defect"] + pieces["f_defect"],
            params={"n": n, "t": t, "kato_f": f.id, "kato_g": g.id},
            constants={**constants, **pieces},
            tol=1e-12,
        )
        for n, lhs, pieces in rows
    ]


def trotter_parts(fam: ChernoffFamily) -> tuple[Operator, Operator]:
    if fam.kind not in (FamilyKind.TROTTER, FamilyKind.SYMMETRIZED_KATO) or fam.parts is None:
        raise RegularityMismatch(
            f"The nonsymmetric product check needs an (A, B) split, got a {fam.kind.value} family"
        )
    return fam.parts
