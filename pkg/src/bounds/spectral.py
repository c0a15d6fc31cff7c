"""Checkers for the single-contraction inequalities.

These take one contraction F and compare F^n with e^{-n(1-F)}: the spectral
1/n bound for self-adjoint F, the sqrt(n) lemma for any contraction, and the
K/(n+1) and (2K+2)/n^{1/3} bounds for quasi-sectorial F.
"""

import logging
import math

import numpy as np

from src.analysis.numerical_range import SectorSpec, contained_in_qs_domain, range_boundary
from src.bounds.models import BoundReport
from src.config.constants import BoundId
from src.config.settings import settings
from src.errors import (
    NotContraction,
    NotHermitian,
    RegularityMismatch,
    SpectrumOutOfRange,
    ZeroVector,
)
from src.linalg.operators import (
    HermitianSpectrum,
    Operator,
    hermitian_eig,
    matrix_exp,
    matrix_function,
    matrix_power,
    operator_norm,
)

logger = logging.getLogger(__name__)


def _contraction_spectrum(F: Operator | HermitianSpectrum) -> HermitianSpectrum:
    spectrum = F if isinstance(F, HermitianSpectrum) else hermitian_eig(F)
    tol = settings.hermitian_tol
    if spectrum.min_eigenvalue < -tol or spectrum.max_eigenvalue > 1 + tol:
        raise SpectrumOutOfRange(
            f"Spectrum [{spectrum.min_eigenvalue:.3e}, {spectrum.max_eigenvalue:.3e}] "
            "is not inside [0, 1]"
        )
    return spectrum


def certify_quasi_sectorial(F: Operator, alpha: float | None = None) -> str:
    """Certify F for the quasi-sectorial estimates.

    A Hermitian F with spectrum in [0, 1] qualifies directly; any other F needs
    W(F) inside D_alpha at the given alpha. Returns the certificate used.
    """
    try:
        _contraction_spectrum(F)
        return "self-adjoint"
    except (NotHermitian, SpectrumOutOfRange) as e:
        if alpha is None:
            raise RegularityMismatch(
                f"F is not a self-adjoint contraction and no sector angle was given: {e}"
            ) from e
    inside, margin = contained_in_qs_domain(range_boundary(F), SectorSpec(alpha))
    if not inside:
        raise RegularityMismatch(
            f"W(F) is not inside D_alpha for alpha={alpha:.6g} (margin {margin:.3e})"
        )
    return "quasi-sectorial"


def check_spectral_bound(F: Operator | HermitianSpectrum, n: int) -> BoundReport:
    """||F^n - e^{-n(1-F)}|| <= 1/n for a Hermitian contraction F >= 0."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    spectrum = _contraction_spectrum(F)
    power = matrix_function(spectrum, lambda s: s**n)
    semigroup = matrix_function(spectrum, lambda s: math.exp(-n * (1.0 - s)))
    return BoundReport.evaluate(
        BoundId.SPECTRAL,
        lhs=operator_norm(power - semigroup),
        rhs=1.0 / n,
        params={"n": n, "dim": spectrum.dim},
    )


def check_sqrt_n_lemma(F: Operator, n: int, w: np.ndarray) -> BoundReport:
    """||e^{n(F-1)} w - F^n w|| <= sqrt(n) ||(F-1) w||."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    norm = operator_norm(F)
    if norm > 1.0 + settings.pass_tol:
        raise NotContraction(f"||F|| = {norm:.12g} exceeds 1")
    w = np.asarray(w, dtype=np.complex128)
    if w.shape != (F.dim,):
        raise ValueError(f"w must have shape ({F.dim},), got {w.shape}")
    if not np.any(w):
        raise ZeroVector("sqrt(n) lemma needs a nonzero vector")

    generator = Operator.identity(F.dim) - F
    lhs = np.linalg.norm(matrix_exp(generator, n).entries @ w - matrix_power(F, n).entries @ w)
    rhs = math.sqrt(n) * np.linalg.norm(generator.entries @ w)
    return BoundReport.evaluate(
        BoundId.SQRT_N_LEMMA, lhs=float(lhs), rhs=float(rhs), params={"n": n, "dim": F.dim}
    )


def estimate_K(
    F: Operator, n_max: int, alpha: float | None = None
) -> tuple[float, list[BoundReport]]:
    """K_hat = max_{1<=n<=n_max} (n+1) ||F^n (1-F)||, one report per n."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    certificate = certify_quasi_sectorial(F, alpha)

    defect = (Operator.identity(F.dim) - F).entries
    power = F.entries.copy()
    values = np.empty(n_max)
    for n in range(1, n_max + 1):
        values[n - 1] = operator_norm(Operator(power @ defect))
        power = power @ F.entries

    scaled = values * np.arange(2, n_max + 2)
    k_hat = float(np.max(scaled))
    argmax_n = int(np.argmax(scaled)) + 1
    logger.debug("K_hat=%.6g at n=%d (%s certificate)", k_hat, argmax_n, certificate)

    constants = {"K": k_hat, "argmax_n": float(argmax_n)}
    reports = [
        BoundReport.evaluate(
            BoundId.K_ESTIMATE,
            lhs=float(values[n - 1]),
            rhs=k_hat / (n + 1),
            params={"n": n, "n_max": n_max, "alpha": alpha},
            constants=constants,
        )
        for n in range(1, n_max + 1)
    ]
    return k_hat, reports


def check_cube_root_bound(
    F: Operator, n: int, K_hat: float, alpha: float | None = None
) -> BoundReport:
    """||F^n - e^{n(F-1)}|| <= (2 K_hat + 2)/n^{1/3}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    certify_quasi_sectorial(F, alpha)
    lhs = operator_norm(
        matrix_power(F, n) - matrix_exp(Operator.identity(F.dim) - F, n)
    )
    M = 2.0 * K_hat + 2.0
    return BoundReport.evaluate(
        BoundId.CUBE_ROOT,
        lhs=lhs,
        rhs=M / n ** (1.0 / 3.0),
        params={"n": n, "alpha": alpha},
        constants={"K": K_hat, "M": M},
    )


def cube_root_sweep(
    F: Operator, n_max: int, K_hat: float, alpha: float | None = None
) -> list[BoundReport]:
    """check_cube_root_bound for every n in 1..n_max with incremental powers."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    certify_quasi_sectorial(F, alpha)
    step = matrix_exp(Operator.identity(F.dim) - F, 1.0).entries
    power, semigroup = F.entries.copy(), step.copy()
    M = 2.0 * K_hat + 2.0
    reports = []
    for n in range(1, n_max + 1):
        reports.append(
            BoundReport.evaluate(
                BoundId.CUBE_ROOT,
                lhs=operator_norm(Operator(power - semigroup)),
                rhs=M / n ** (1.0 / 3.0),
                params={"n": n, "alpha": alpha},
                constants={"K": K_hat, "M": M},
            )
        )
        power = power @ F.entries
        semigroup = semigroup @ step
    return reports
