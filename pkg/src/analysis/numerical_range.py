"""Numerical range W(A) and the sector / quasi-sectorial domain tests.

The boundary of W(A) is traced by the support-function (rotation) method:
for each direction theta the top eigenvector x of Re(e^{i theta} A) gives the
extreme point x*Ax of W(A) in that direction.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
import scipy.linalg as la

from src.config.settings import settings
from src.errors import ZeroPoint
from src.linalg.operators import Operator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SectorSpec:
    """Semi-angle alpha in [0, pi/2) of S_alpha (vertex 0) and D_alpha (vertex 1)."""

    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha < math.pi / 2:
            raise ValueError(f"Sector semi-angle must lie in [0, pi/2), got {self.alpha}")


@dataclass
class RangeBoundary:
    """Polygonal approximation of the boundary of W(A)."""

    points: np.ndarray  # complex, one per direction
    angles: np.ndarray
    dim: int
    support: np.ndarray = field(repr=False)  # h(theta) = max Re(e^{i theta} W)

    def extremality_defect(self, A: Operator | None = None) -> float:
        """max_k |Re(e^{i theta_k} z_k) - h(theta_k)|; 0 for exact extreme points.

        With ``A`` the support values are recomputed from the operator instead
        of taken from the stored ones.
        """
        support = self.support if A is None else support_values(A, self.angles)
        projected = np.real(np.exp(1j * self.angles) * self.points)
        return float(np.max(np.abs(projected - support)))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"theta": self.angles, "re": self.points.real, "im": self.points.imag}
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "angles": self.angles.tolist(),
            "points": [[z.real, z.imag] for z in self.points],
        }


def _support_pair(A: np.ndarray, theta: float) -> tuple[float, complex]:
    rotated = np.exp(1j * theta) * A
    hermitian_part = (rotated + rotated.conj().T) / 2
    eigenvalues, eigenvectors = la.eigh(hermitian_part)
    x = eigenvectors[:, -1]
    return float(eigenvalues[-1]), complex(x.conj() @ A @ x)


def support_values(A: Operator, angles: np.ndarray) -> np.ndarray:
    """Support function h(theta) = lambda_max(Re(e^{i theta} A))."""
    return np.array([_support_pair(A.entries, float(th))[0] for th in angles])


def range_boundary(A: Operator, m: int | None = None) -> RangeBoundary:
    """Boundary points of W(A) for m uniformly spaced support directions."""
    m = settings.range_points if m is None else m
    if m < 8:
        raise ValueError(f"range_boundary needs m >= 8 directions, got {m}")
    angles = 2 * np.pi * np.arange(m) / m
    support = np.empty(m)
    points = np.empty(m, dtype=np.complex128)
    for k, theta in enumerate(angles):
        support[k], points[k] = _support_pair(A.entries, float(theta))
    return RangeBoundary(points=points, angles=angles, dim=A.dim, support=support)


def contained_in_sector(b: RangeBoundary, s: SectorSpec) -> tuple[bool, float]:
    """Closed containment W in S_alpha with the minimal angular slack as margin."""
    tol = settings.membership_tol
    slack = [
        s.alpha if abs(z) <= tol else s.alpha - abs(math.atan2(z.imag, z.real))
        for z in b.points
    ]
    margin = float(min(slack))
    return margin >= -tol, margin


def _circular_sector_distance(w: complex, alpha: float, radius: float) -> float:
    """Signed distance of w to {r e^{i phi}: 0 <= r <= radius, |phi| <= alpha}.

    Positive inside (distance to the boundary), negative outside.
    """
    rho = abs(w)
    if rho == 0.0:
        return 0.0
    psi = abs(math.atan2(w.imag, w.real))
    if psi <= alpha and rho <= radius:
        edge = [
            rho if abs(psi - beta) >= math.pi / 2 else rho * math.sin(abs(psi - beta))
            for beta in (alpha, -alpha)
        ]
        return min(radius - rho, *edge)
    if psi <= alpha:
        return -(rho - radius)
    gap = psi - alpha
    if gap >= math.pi / 2:
        return -rho
    if rho * math.cos(gap) <= radius:
        return -rho * math.sin(gap)
    corner = radius * complex(math.cos(alpha), math.sin(alpha))
    return -abs(complex(w.real, abs(w.imag)) - corner)


def qs_domain_margin(z: complex, alpha: float) -> float:
    """Signed distance-to-violation of z for D_alpha.

    D_alpha is the union of the disk |z| <= sin(alpha) and the lens
    |arg(1-z)| <= alpha, |1-z| <= cos(alpha). Exact outside; inside it is the
    larger of the two component margins, a lower bound on the true distance.
    """
    disk = math.sin(alpha) - abs(z)
    lens = _circular_sector_distance(1.0 - z, alpha, math.cos(alpha))
    return max(disk, lens)


def contained_in_qs_domain(b: RangeBoundary, s: SectorSpec) -> tuple[bool, float]:
    """Closed containment W in D_alpha."""
    margin = float(min(qs_domain_margin(complex(z), s.alpha) for z in b.points))
    return margin >= -settings.membership_tol, margin


def dist_to_neg_sector(zeta: complex, s: SectorSpec) -> float:
    """Euclidean distance from zeta to -S_alpha = {z: |arg(-z)| <= alpha}."""
    zeta = complex(zeta)
    if zeta == 0:
        raise ZeroPoint("dist_to_neg_sector is undefined at zeta = 0")
    phi = abs(math.atan2(zeta.imag, zeta.real))
    gap = math.pi - s.alpha - phi
    if gap <= 0:
        return 0.0
    if gap >= math.pi / 2:
        return abs(zeta)
    return abs(zeta) * math.sin(gap)


def min_semi_angle(b: RangeBoundary) -> float | None:
    """Smallest alpha with W in S_alpha, or None when no alpha < pi/2 works."""
    tol = settings.membership_tol
    if any(z.real < -tol for z in b.points):
        return None
    angles = [abs(math.atan2(z.imag, z.real)) for z in b.points if abs(z) > tol]
    result = max(angles, default=0.0)
    return result if result < math.pi / 2 else None
