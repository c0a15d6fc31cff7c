"""Seeded random operator ensembles.

All ensembles start from a standard complex Gaussian matrix
(re + i*im)/sqrt(2) drawn from ``numpy.random.default_rng(seed)`` and
post-process it into the requested class. Generators take a
``numpy.random.Generator`` so a caller can draw several matrices from one seed.
"""

import numpy as np
import scipy.linalg as la

from src.linalg.operators import Operator


def complex_gaussian(rng: np.random.Generator, d: int) -> np.ndarray:
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar unitary via QR with phase correction."""
    q, r = la.qr(complex_gaussian(rng, d))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def _from_spectrum(u: np.ndarray, eigenvalues: np.ndarray) -> np.ndarray:
    a = (u * eigenvalues) @ u.conj().T
    if np.isrealobj(eigenvalues):
        a = (a + a.conj().T) / 2
    return a


def random_hermitian(
    rng: np.random.Generator, d: int, spectral_radius: float = 1.0
) -> Operator:
    g = complex_gaussian(rng, d)
    h = (g + g.conj().T) / 2
    h *= spectral_radius / np.max(np.abs(la.eigvalsh(h)))
    return Operator((h + h.conj().T) / 2)


def random_psd(
    rng: np.random.Generator,
    d: int,
    spectral_radius: float = 1.0,
    min_eigenvalue: float = 0.0,
) -> Operator:
    """Hermitian PSD with spectrum in [min_eigenvalue, spectral_radius]."""
    eigenvalues = np.sort(rng.uniform(min_eigenvalue, spectral_radius, d))
    eigenvalues[-1] = spectral_radius
    return Operator(_from_spectrum(random_unitary(rng, d), eigenvalues))


def random_hermitian_contraction(rng: np.random.Generator, d: int) -> Operator:
    """Hermitian with spectrum drawn uniformly from [0, 1]."""
    return Operator(_from_spectrum(random_unitary(rng, d), rng.uniform(0.0, 1.0, d)))


def random_contraction(rng: np.random.Generator, d: int) -> Operator:
    """General (nonnormal) matrix rescaled to norm in [0.5, 1]."""
    g = complex_gaussian(rng, d)
    return Operator(g * (rng.uniform(0.5, 1.0) / la.svdvals(g)[0]))


def random_normal(rng: np.random.Generator, d: int, radius: float = 1.0) -> Operator:
    """Normal matrix with complex eigenvalues in the disk of the given radius."""
    eigenvalues = radius * np.sqrt(rng.uniform(0, 1, d)) * np.exp(
        2j * np.pi * rng.uniform(0, 1, d)
    )
    return Operator(_from_spectrum(random_unitary(rng, d), eigenvalues))


def random_sectorial(
    rng: np.random.Generator,
    d: int,
    alpha: float,
    spectral_radius: float = 1.0,
    min_eigenvalue: float = 0.05,
    fill: float = 0.9,
) -> Operator:
    """Nonnormal m-sectorial H = P + iQ with W(H) inside S_alpha.

    P is PSD and Q = fill*tan(alpha) P^1/2 K P^1/2 with Hermitian ||K|| <= 1, so
    |x*Qx| <= fill*tan(alpha) x*Px for every x.
    """
    if not 0 <= alpha < np.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2), got {alpha}")
    p_eigs = np.sort(rng.uniform(min_eigenvalue, 1.0, d))
    u = random_unitary(rng, d)
    root = _from_spectrum(u, np.sqrt(p_eigs))
    p = root @ root
    k = random_hermitian(rng, d).entries
    q = fill * np.tan(alpha) * (root @ k @ root)
    q = (q + q.conj().T) / 2
    h = p + 1j * q
    return Operator(h * (spectral_radius / la.svdvals(h)[0]))


def random_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)
