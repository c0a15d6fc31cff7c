"""Chernoff families, Kato functions and the JSON family schema."""

from .kato import KATO_REGISTRY, KatoFunction, get_kato, validate_kato
from .chernoff import (
    ChernoffFamily,
    Regularity,
    eval_F,
    eval_S,
    make_exp_family,
    make_kato_family,
    make_resolvent_family,
    make_symmetrized_family,
    make_trotter_family,
)
from .specs import FamilySpec, build_family

__all__ = [
    "KATO_REGISTRY",
    "KatoFunction",
    "get_kato",
    "validate_kato",
    "ChernoffFamily",
    "Regularity",
    "eval_F",
    "eval_S",
    "make_exp_family",
    "make_kato_family",
    "make_resolvent_family",
    "make_symmetrized_family",
    "make_trotter_family",
    "FamilySpec",
    "build_family",
]
