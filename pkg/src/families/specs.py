"""JSON family schema and its construction into ChernoffFamily.

A matrix entry is either an interchange object {"dim", "re", "im"} or a
generator string such as ``random:d=8,seed=3,spectral_radius=10,psd`` or
``random:{d=8,spectral_radius=1,sectorial:0.785}``. Recognized class tokens:
psd, hermitian, contraction, hermitian-contraction, normal, sectorial:<alpha>.
"""

import logging
from typing import Any

import numpy as np
from pydantic import BaseModel, field_validator, model_validator

from src.config.constants import FamilyKind
from src.errors import RegularityMismatch, ScenarioError
from src.families.chernoff import (
    ChernoffFamily,
    Regularity,
    make_exp_family,
    make_kato_family,
    make_resolvent_family,
    make_symmetrized_family,
    make_trotter_family,
)
from src.families.kato import KATO_REGISTRY, get_kato
from src.linalg import generators
from src.linalg.interchange import operator_from_dict
from src.linalg.operators import Operator

logger = logging.getLogger(__name__)

MatrixSpec = str | dict[str, Any]

RANDOM_PREFIX = "random:"

# Stable per-role stream index so H, A and B draw independent matrices
_ROLE_STREAMS = {"H": 0, "A": 1, "B": 2}


def _parse_random(text: str) -> dict[str, Any]:
    body = text[len(RANDOM_PREFIX):].strip().strip("{}")
    parsed: dict[str, Any] = {"d": None, "seed": None, "spectral_radius": 1.0, "class": "psd"}
    for token in (t.strip() for t in body.split(",") if t.strip()):
        if "=" in token:
            key, value = (s.strip() for s in token.split("=", 1))
            if key not in ("d", "seed", "spectral_radius", "min_eigenvalue"):
                raise ScenarioError(f"Unknown random-matrix key '{key}' in '{text}'")
            parsed[key] = float(value) if key in ("spectral_radius", "min_eigenvalue") else int(value)
        elif token.startswith("sectorial:"):
            parsed["class"] = "sectorial"
            parsed["alpha"] = float(token.split(":", 1)[1])
        elif token in ("psd", "hermitian", "contraction", "hermitian-contraction", "normal"):
            parsed["class"] = token
        else:
            raise ScenarioError(f"Unknown random-matrix token '{token}' in '{text}'")
    if parsed["d"] is None or parsed["d"] < 1:
        raise ScenarioError(f"Random matrix spec '{text}' needs d >= 1")
    return parsed


def is_random_spec(spec: MatrixSpec | None) -> bool:
    return isinstance(spec, str) and spec.startswith(RANDOM_PREFIX)


def build_operator(spec: MatrixSpec, role: str, seed: int | None) -> Operator:
    """Materialize a matrix spec; random specs without their own seed use ``seed``."""
    if isinstance(spec, dict):
        return operator_from_dict(spec)
    if not is_random_spec(spec):
        raise ScenarioError(f"Matrix spec for {role} must be an object or 'random:...'")

    params = _parse_random(spec)
    own_seed = params["seed"]
    if own_seed is None and seed is None:
        raise ScenarioError(f"Random matrix for {role} needs a seed")
    entropy = [own_seed] if own_seed is not None else [seed, _ROLE_STREAMS.get(role, 3)]
    rng = np.random.default_rng(entropy)
    d, radius = params["d"], params["spectral_radius"]

    match params["class"]:
        case "psd":
            return generators.random_psd(
                rng, d, radius, min_eigenvalue=params.get("min_eigenvalue", 0.0)
            )
        case "hermitian":
            return generators.random_hermitian(rng, d, radius)
        case "contraction":
            return generators.random_contraction(rng, d)
        case "hermitian-contraction":
            return generators.random_hermitian_contraction(rng, d)
        case "normal":
            return generators.random_normal(rng, d, radius)
        case "sectorial":
            return generators.random_sectorial(rng, d, params["alpha"], radius)
    raise ScenarioError(f"Unsupported random class in '{spec}'")


class FamilySpec(BaseModel):
    """JSON family description."""

    kind: FamilyKind
    H: MatrixSpec | None = None
    A: MatrixSpec | None = None
    B: MatrixSpec | None = None
    kato_f: str | None = None
    kato_g: str | None = None
    regularity: str | None = None

    @field_validator("kato_f", "kato_g")
    @classmethod
    def validate_kato_id(cls, v: str | None) -> str | None:
        if v is not None and v not in KATO_REGISTRY:
            raise ValueError(f"Unknown Kato function '{v}'")
        return v

    @field_validator("regularity")
    @classmethod
    def validate_regularity(cls, v: str | None) -> str | None:
        if v is not None:
            Regularity.parse(v)
        return v

    @model_validator(mode="after")
    def check_operands(self) -> "FamilySpec":
        required: dict[FamilyKind, tuple[str, ...]] = {
            FamilyKind.RESOLVENT: ("H",),
            FamilyKind.EXPONENTIAL: ("H",),
            FamilyKind.KATO: ("A", "kato_f"),
            FamilyKind.TROTTER: ("A", "B"),
            FamilyKind.SYMMETRIZED_KATO: ("A", "B", "kato_f", "kato_g"),
        }
        missing = [name for name in required[self.kind] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind.value} family requires {', '.join(missing)}")
        return self

    @property
    def uses_random(self) -> bool:
        return any(is_random_spec(m) for m in (self.H, self.A, self.B))


def build_family(spec: FamilySpec, seed: int | None = None) -> ChernoffFamily:
    """Construct and verify the family a spec describes."""
    declared = Regularity.parse(spec.regularity) if spec.regularity else None

    if spec.kind in (FamilyKind.RESOLVENT, FamilyKind.EXPONENTIAL):
        assert spec.H is not None
        H = build_operator(spec.H, "H", seed)
        regularity = declared or Regularity.self_adjoint()
        if spec.kind == FamilyKind.RESOLVENT:
            return make_resolvent_family(H, regularity)
        return make_exp_family(H, regularity)

    assert spec.A is not None
    A = build_operator(spec.A, "A", seed)
    f = get_kato(spec.kato_f) if spec.kato_f else None
    g = get_kato(spec.kato_g) if spec.kato_g else None

    if spec.kind == FamilyKind.KATO:
        assert f is not None
        family = make_kato_family(f, A)
    else:
        assert spec.B is not None
        B = build_operator(spec.B, "B", seed)
        if spec.kind == FamilyKind.TROTTER:
            family = make_trotter_family(A, B, f, g)
        else:
            assert f is not None and g is not None
            family = make_symmetrized_family(f, g, A, B)

    if declared is not None and declared.kind != family.regularity.kind:
        raise RegularityMismatch(
            f"{spec.kind.value} family is {family.regularity}, declared {declared}"
        )
    logger.debug("Built family %s", family.family_id)
    return family
