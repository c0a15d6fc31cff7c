"""Numerical ranges and Chernoff approximant error analysis.

Only the numerical-range names are re-exported here; families depend on them.
Import approximant tooling from ``src.analysis.approximants``.
"""

from .numerical_range import (
    RangeBoundary,
    SectorSpec,
    contained_in_qs_domain,
    contained_in_sector,
    dist_to_neg_sector,
    min_semi_angle,
    range_boundary,
    support_values,
)

__all__ = [
    "RangeBoundary",
    "SectorSpec",
    "contained_in_qs_domain",
    "contained_in_sector",
    "dist_to_neg_sector",
    "min_semi_angle",
    "range_boundary",
    "support_values",
]
