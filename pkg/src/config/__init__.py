"""Configuration module for chernoff-kit."""

from .settings import settings
from .constants import BoundId, FamilyKind, RegularityKind

__all__ = ["settings", "BoundId", "FamilyKind", "RegularityKind"]
