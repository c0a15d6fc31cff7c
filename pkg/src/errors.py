"""Domain exceptions.

All errors derive from ``ChernoffKitError`` (a ``ValueError``) so callers that
only care about bad input can catch the builtin.
"""


class ChernoffKitError(ValueError):
    """Base class for chernoff-kit errors."""


class NonFinite(ChernoffKitError):
    """Matrix entries or function values contain NaN/Inf."""


class NotHermitian(ChernoffKitError):
    """Operator deviates from its adjoint by more than the Hermitian tolerance."""

    def __init__(self, deviation: float, tolerance: float) -> None:
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Operator is not Hermitian: ||H - H*|| = {deviation:.3e} > {tolerance:.3e}"
        )


class SingularShift(ChernoffKitError):
    """zeta*1 + A is numerically singular."""


class ZeroPoint(ChernoffKitError):
    """Distance to a sector requested for zeta = 0."""


class RegularityMismatch(ChernoffKitError):
    """Declared regularity class fails its pre-check."""


class NegativeTau(ChernoffKitError):
    """Negative step or time argument."""


class NonPositiveTau(ChernoffKitError):
    """S(tau) requested at tau <= 0."""


class InvalidKato(ChernoffKitError):
    """Function violates a clause of the Kato-class definition."""

    def __init__(self, clause: str, detail: str) -> None:
        self.clause = clause
        super().__init__(f"Invalid Kato function ({clause} clause): {detail}")


class BadInterval(ChernoffKitError):
    """t-interval with lo < 0, hi < lo or a degenerate grid."""


class BadGrid(ChernoffKitError):
    """Parameter grid outside the range a checker accepts."""


class TooFewSamples(ChernoffKitError):
    """Not enough samples above the floor for a rate fit."""


class AllBelowFloor(ChernoffKitError):
    """Every error sample is at the numerical floor (exact family)."""


class SpectrumOutOfRange(ChernoffKitError):
    """Hermitian contraction spectrum leaves [0, 1]."""


class NotContraction(ChernoffKitError):
    """Operator norm exceeds 1."""


class ZeroVector(ChernoffKitError):
    """Zero vector passed where a nonzero one is required."""


class ZetaOutOfSector(ChernoffKitError):
    """Spectral parameter outside the open sector S_{pi - alpha}."""


class ScenarioError(ChernoffKitError):
    """Scenario configuration is invalid."""
