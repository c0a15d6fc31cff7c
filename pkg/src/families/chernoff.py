"""Chernoff families tau -> F(tau) with F(0) = 1 and generator H.

Regularity is declared by the caller and verified on construction; a failed
check raises RegularityMismatch rather than silently downgrading the family.
"""

import hashlib
import logging
import math
import re
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
import scipy.linalg as la

from src.analysis.numerical_range import SectorSpec, contained_in_sector, range_boundary
from src.config.constants import FamilyKind, RegularityKind
from src.config.settings import settings
from src.errors import NegativeTau, NonPositiveTau, NotHermitian, RegularityMismatch
from src.families.kato import KatoFunction
from src.linalg.operators import (
    HermitianSpectrum,
    Operator,
    hermitian_eig,
    matrix_exp,
    matrix_function,
)

logger = logging.getLogger(__name__)

_REGULARITY_PATTERN = re.compile(r"^quasi-sectorial[:(]\s*([0-9.eE+-]+)\s*\)?$")


@dataclass(frozen=True)
class Regularity:
    """Regularity class; alpha is set only for quasi-sectorial families."""

    kind: RegularityKind
    alpha: float | None = None

    @classmethod
    def self_adjoint(cls) -> "Regularity":
        return cls(RegularityKind.SELF_ADJOINT)

    @classmethod
    def quasi_sectorial(cls, alpha: float) -> "Regularity":
        SectorSpec(alpha)
        return cls(RegularityKind.QUASI_SECTORIAL, alpha)

    @classmethod
    def general(cls) -> "Regularity":
        return cls(RegularityKind.GENERAL)

    @classmethod
    def parse(cls, text: str) -> "Regularity":
        """Parse "self-adjoint", "general" or "quasi-sectorial:<alpha>"."""
        text = text.strip()
        if text == RegularityKind.SELF_ADJOINT.value:
            return cls.self_adjoint()
        if text == RegularityKind.GENERAL.value:
            return cls.general()
        match = _REGULARITY_PATTERN.match(text)
        if match:
            return cls.quasi_sectorial(float(match.group(1)))
        raise ValueError(
            f"Unknown regularity '{text}'; expected self-adjoint, general or quasi-sectorial:<alpha>"
        )

    def __str__(self) -> str:
        if self.kind == RegularityKind.QUASI_SECTORIAL:
            return f"quasi-sectorial:{self.alpha!r}"
        return self.kind.value


@dataclass(frozen=True)
class ChernoffFamily:
    """A parametrized contraction family with attached generator H."""

    kind: FamilyKind
    generator: Operator
    regularity: Regularity
    parts: tuple[Operator, Operator] | None = None
    kato_f: KatoFunction | None = None
    kato_g: KatoFunction | None = None
    spectra: dict[str, HermitianSpectrum] = field(
        default_factory=dict, compare=False, repr=False
    )

    @property
    def dim(self) -> int:
        return self.generator.dim

    @property
    def family_id(self) -> str:
        digest = hashlib.md5(self.generator.entries.tobytes())
        if self.parts is not None:
            for part in self.parts:
                digest.update(part.entries.tobytes())
        for k in (self.kato_f, self.kato_g):
            if k is not None:
                digest.update(k.id.encode())
        return f"{self.kind.value}-{digest.hexdigest()[:8]}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "family_id": self.family_id,
            "kind": self.kind.value,
            "dim": self.dim,
            "regularity": str(self.regularity),
            "kato_f": self.kato_f.id if self.kato_f else None,
            "kato_g": self.kato_g.id if self.kato_g else None,
        }


def _require_hermitian_psd(op: Operator, name: str) -> HermitianSpectrum:
    spectrum = hermitian_eig(op)
    floor = -settings.hermitian_tol * (1.0 + float(np.max(np.abs(spectrum.eigenvalues))))
    if spectrum.min_eigenvalue < floor:
        raise RegularityMismatch(
            f"{name} must be positive semi-definite (min eigenvalue {spectrum.min_eigenvalue:.3e})"
        )
    return spectrum


def _verify_regularity(H: Operator, regularity: Regularity) -> None:
    if regularity.kind == RegularityKind.SELF_ADJOINT:
        try:
            _require_hermitian_psd(H, "H")
        except NotHermitian as e:
            raise RegularityMismatch(f"self-adjoint family declared but {e}") from e
    elif regularity.kind == RegularityKind.QUASI_SECTORIAL:
        assert regularity.alpha is not None
        inside, margin = contained_in_sector(range_boundary(H), SectorSpec(regularity.alpha))
        if not inside:
            raise RegularityMismatch(
                f"W(H) is not inside S_alpha for alpha={regularity.alpha:.6g} (margin {margin:.3e})"
            )


def make_resolvent_family(H: Operator, regularity: Regularity) -> ChernoffFamily:
    """F(tau) = (1 + tau H)^-1."""
    _verify_regularity(H, regularity)
    return ChernoffFamily(FamilyKind.RESOLVENT, H, regularity)


def make_exp_family(H: Operator, regularity: Regularity) -> ChernoffFamily:
    """F(tau) = exp(-tau H), the exact family."""
    _verify_regularity(H, regularity)
    return ChernoffFamily(FamilyKind.EXPONENTIAL, H, regularity)


def make_kato_family(f: KatoFunction, A: Operator) -> ChernoffFamily:
    """F(tau) = f(tau A) for Hermitian PSD A."""
    spectrum = _require_hermitian_psd(A, "A")
    return ChernoffFamily(
        FamilyKind.KATO,
        A,
        Regularity.self_adjoint(),
        kato_f=f,
        spectra={"A": spectrum},
    )


def make_trotter_family(
    A: Operator,
    B: Operator,
    f: KatoFunction | None = None,
    g: KatoFunction | None = None,
) -> ChernoffFamily:
    """F(tau) = f(tau A) g(tau B) with H = A + B; exponentials when f, g are omitted.

    The product is not self-adjoint, so the family is always declared general.
    """
    spectra = {
        "A": _require_hermitian_psd(A, "A"),
        "B": _require_hermitian_psd(B, "B"),
    }
    return ChernoffFamily(
        FamilyKind.TROTTER,
        A + B,
        Regularity.general(),
        parts=(A, B),
        kato_f=f,
        kato_g=g,
        spectra=spectra,
    )


def make_symmetrized_family(
    f: KatoFunction, g: KatoFunction, A: Operator, B: Operator
) -> ChernoffFamily:
    """F(tau) = g(tau B)^1/2 f(tau A) g(tau B)^1/2 with H = A + B."""
    spectra = {
        "A": _require_hermitian_psd(A, "A"),
        "B": _require_hermitian_psd(B, "B"),
    }
    return ChernoffFamily(
        FamilyKind.SYMMETRIZED_KATO,
        A + B,
        Regularity.self_adjoint(),
        parts=(A, B),
        kato_f=f,
        kato_g=g,
        spectra=spectra,
    )


def kato_factor(k: KatoFunction, spectrum: HermitianSpectrum, tau: float) -> Operator:
    """k(tau X) for Hermitian X given by its spectrum."""
    return matrix_function(spectrum, lambda s: float(k(tau * s)))


def sqrt_kato_factor(
    g: KatoFunction,
    spectrum: HermitianSpectrum,
    tau: float,
    order: Literal["after", "before"] = "after",
) -> Operator:
    """g(tau B)^1/2.

    ``after`` takes the square root of the Hermitian operator g(tau B);
    ``before`` applies the scalar map g^1/2 spectrally. Both agree for PSD B.
    """
    if order == "before":
        return matrix_function(spectrum, lambda s: math.sqrt(max(float(g(tau * s)), 0.0)))
    factor = kato_factor(g, spectrum, tau)
    return matrix_function(hermitian_eig(factor), lambda s: math.sqrt(max(s, 0.0)))


def eval_F(fam: ChernoffFamily, tau: float) -> Operator:
    """F(tau); F(0) is the identity exactly."""
    if tau < 0:
        raise NegativeTau(f"F(tau) requires tau >= 0, got {tau}")
    if tau == 0:
        return Operator.identity(fam.dim)

    match fam.kind:
        case FamilyKind.RESOLVENT:
            H = fam.generator.entries
            eye = np.eye(fam.dim, dtype=np.complex128)
            return Operator(la.solve(eye + tau * H, eye))
        case FamilyKind.EXPONENTIAL:
            return matrix_exp(fam.generator, tau)
        case FamilyKind.KATO:
            assert fam.kato_f is not None
            return kato_factor(fam.kato_f, fam.spectra["A"], tau)
        case FamilyKind.TROTTER:
            assert fam.parts is not None
            A, B = fam.parts
            left = (
                matrix_exp(A, tau)
                if fam.kato_f is None
                else kato_factor(fam.kato_f, fam.spectra["A"], tau)
            )
            right = (
                matrix_exp(B, tau)
                if fam.kato_g is None
                else kato_factor(fam.kato_g, fam.spectra["B"], tau)
            )
            return left @ right
        case FamilyKind.SYMMETRIZED_KATO:
            assert fam.kato_f is not None and fam.kato_g is not None
            root = sqrt_kato_factor(fam.kato_g, fam.spectra["B"], tau)
            middle = kato_factor(fam.kato_f, fam.spectra["A"], tau)
            return root @ middle @ root
    raise ValueError(f"Unsupported family kind: {fam.kind}")


def eval_S(fam: ChernoffFamily, tau: float) -> Operator:
    """S(tau) = (1 - F(tau))/tau."""
    if tau <= 0:
        raise NonPositiveTau(f"S(tau) requires tau > 0, got {tau}")
    F = eval_F(fam, tau)
    return Operator((np.eye(fam.dim) - F.entries) / tau)
