"""Dense complex operators on C^d and the reference linear algebra.

Everything downstream (families, approximants, bound checkers) trusts these
routines as the oracle layer, so they are thin wrappers over LAPACK via scipy.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from src.config.settings import settings
from src.errors import NegativeTau, NonFinite, NotHermitian, SingularShift

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Operator:
    """Bounded operator on C^d stored as a dense complex matrix."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.complex128, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"Operator must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise NonFinite("Operator entries contain NaN or Inf")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim, dtype=np.complex128))

    @classmethod
    def zeros(cls, dim: int) -> "Operator":
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def diag(cls, values: "list[complex] | np.ndarray") -> "Operator":
        return cls(np.diag(np.asarray(values, dtype=np.complex128)))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def adjoint(self) -> "Operator":
        return Operator(self.entries.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.entries @ other.entries)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.entries + other.entries)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.entries * scalar)

    __rmul__ = __mul__

    def equals(self, other: "Operator", tol: float = 1e-10) -> bool:
        """Entrywise equality within ``tol``."""
        if self.dim != other.dim:
            return False
        return bool(np.max(np.abs(self.entries - other.entries)) <= tol)

    def is_hermitian(self, tol: float | None = None) -> bool:
        tol = settings.hermitian_tol if tol is None else tol
        return hermitian_deviation(self) <= tol * (1.0 + operator_norm(self))


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigen-decomposition H = U diag(lambda) U* with ascending eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> Operator:
        u = self.eigenvectors
        return Operator((u * self.eigenvalues) @ u.conj().T)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def _check_finite(a: np.ndarray) -> None:
    if not np.all(np.isfinite(a)):
        raise NonFinite("Matrix entries contain NaN or Inf")


def operator_norm(A: Operator) -> float:
    """Largest singular value of A."""
    _check_finite(A.entries)
    return float(la.svdvals(A.entries)[0])


def hermitian_deviation(A: Operator) -> float:
    """||A - A*|| in operator norm."""
    return float(la.svdvals(A.entries - A.entries.conj().T)[0])


def hermitian_eig(H: Operator, tol: float | None = None) -> HermitianSpectrum:
    """Spectral decomposition of a Hermitian operator.

    Inputs whose deviation from Hermitian exceeds ``tol * (1 + ||H||)`` are
    rejected; they are never symmetrized.
    """
    tol = settings.hermitian_tol if tol is None else tol
    deviation = hermitian_deviation(H)
    allowed = tol * (1.0 + operator_norm(H))
    if deviation > allowed:
        raise NotHermitian(deviation, allowed)
    eigenvalues, eigenvectors = la.eigh(H.entries)
    return HermitianSpectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def matrix_function(S: HermitianSpectrum, phi: Callable[[float], float]) -> Operator:
    """phi(H) = U diag(phi(lambda)) U* by the spectral functional calculus."""
    values = np.array([phi(float(lam)) for lam in S.eigenvalues])
    if not np.all(np.isfinite(values)):
        raise NonFinite("phi is not finite on the spectrum")
    u = S.eigenvectors
    return Operator((u * values) @ u.conj().T)


def matrix_exp(A: Operator, t: float) -> Operator:
    """exp(-tA) by scaling and squaring (Pade core)."""
    if t < 0:
        raise NegativeTau(f"matrix_exp requires t >= 0, got {t}")
    if t == 0:
        return Operator.identity(A.dim)
    result = la.expm(-t * A.entries)
    _check_finite(result)
    return Operator(result)


def matrix_power(A: Operator, n: int) -> Operator:
    """A^n by binary exponentiation; A^0 = 1."""
    if n < 0:
        raise ValueError(f"matrix_power requires n >= 0, got {n}")
    return Operator(np.linalg.matrix_power(A.entries, n))


def resolvent_shift(A: Operator, zeta: complex, tol: float | None = None) -> Operator:
    """(zeta*1 + A)^-1."""
    tol = settings.singularity_tol if tol is None else tol
    shifted = A.entries + zeta * np.eye(A.dim)
    smallest = float(la.svdvals(shifted)[-1])
    if smallest <= tol:
        raise SingularShift(
            f"zeta = {zeta} gives a singular shift (sigma_min = {smallest:.3e})"
        )
    return Operator(la.solve(shifted, np.eye(A.dim, dtype=np.complex128)))


def is_psd(H: Operator, tol: float | None = None) -> bool:
    """Hermitian with spectrum >= -tol * (1 + ||H||)."""
    tol = settings.hermitian_tol if tol is None else tol
    spectrum = hermitian_eig(H, tol)
    return spectrum.min_eigenvalue >= -tol * (1.0 + operator_norm(H))
