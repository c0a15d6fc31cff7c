"""Family kinds, regularity classes and the bound registry ids."""

from enum import Enum


class FamilyKind(str, Enum):
    """Constructions of tau -> F(tau)."""

    RESOLVENT = "resolvent"  # (1 + tau H)^-1
    EXPONENTIAL = "exponential"  # exp(-tau H), exact family
    KATO = "kato"  # f(tau A)
    TROTTER = "trotter"  # f(tau A) g(tau B), exponentials by default
    SYMMETRIZED_KATO = "symmetrized-kato"  # g(tau B)^1/2 f(tau A) g(tau B)^1/2


class RegularityKind(str, Enum):
    """Declared regularity class of a family."""

    SELF_ADJOINT = "self-adjoint"
    QUASI_SECTORIAL = "quasi-sectorial"
    GENERAL = "general"


class BoundId(str, Enum):
    """Registry of checkable inequalities."""

    SQRT_N_LEMMA = "eq-0.5"
    K_ESTIMATE = "eq-2.1.14"
    SPECTRAL = "eq-3.1.151"
    INTERVAL_TRANSFER = "eq-3.2.8"
    SCALED_SEMIGROUP = "eq-3.2.12"
    SCALED_RESOLVENT_DECAY = "eq-3.2.19"
    SECTORIAL_SCALED_RESOLVENT = "eq-3.2.161"
    SECTORIAL_SEMIGROUP = "eq-3.2.162"
    SECTORIAL_SCALED_SEMIGROUP = "eq-3.2.163"
    RESOLVENT_RATE = "eq-3.3.1"
    CHERNOFF_RATE = "eq-3.3.2"
    SUP_RATE = "eq-3.3.15"
    TAU_LINEAR_RESOLVENT = "eq-3.3.17"
    STRICT_CONTRACTION = "eq-3.3.20"
    INFINITE_INTERVAL = "eq-3.3.22"
    CUBE_ROOT = "eq-6.2.5"
    SECTORIAL_RESOLVENT = "est-res"
    SECTORIAL_SUP_RATE = "est-ch"
    SEMIGROUP_RESOLVENT_RATIO = "esa5"
    LEMMA_CONSTANT = "lemma-3.2.1-c"
    TROTTER_KATO_NONSYM = "trotter-kato-nonsym"


BOUND_DESCRIPTIONS: dict[BoundId, str] = {
    BoundId.SQRT_N_LEMMA: "||e^{n(F-1)}w - F^n w|| <= sqrt(n) ||(F-1)w||",
    BoundId.K_ESTIMATE: "||F^n(1-F)|| <= K/(n+1)",
    BoundId.SPECTRAL: "||F^n - e^{-n(1-F)}|| <= 1/n",
    BoundId.INTERVAL_TRANSFER: "||(1+tS)^-1 - (1+tH)^-1|| <= b(1+2/a)^2 ||(1+S)^-1 - (1+H)^-1||",
    BoundId.SCALED_SEMIGROUP: "||e^{-tS(t/n)} - e^{-tH}|| <= c ||(1+tS(t/n))^-1 - (1+tH)^-1||",
    BoundId.SCALED_RESOLVENT_DECAY: "sup_t ||(1+tS(t/n))^-1 - (1+tH)^-1|| <= L / n -> 0",
    BoundId.SECTORIAL_SCALED_RESOLVENT: "sup_t ||(z+tS)^-1 - (z+tH)^-1|| <= L tau / dist(z,-S_a)",
    BoundId.SECTORIAL_SEMIGROUP: "sup_t ||e^{-tS(tau)} - e^{-tH}|| <= K tau",
    BoundId.SECTORIAL_SCALED_SEMIGROUP: "sup_t ||e^{-tS(t/n)} - e^{-tH}|| <= K_1 / n",
    BoundId.RESOLVENT_RATE: "||(1+tS(tau))^-1 - (1+tH)^-1|| <= M_rho (tau/t)^rho",
    BoundId.CHERNOFF_RATE: "||F(tau)^{t/tau} - e^{-tH}|| <= c_rho (tau/t)^rho",
    BoundId.SUP_RATE: "sup_t ||F(t/n)^n - e^{-tH}|| <= c_rho / n^rho",
    BoundId.TAU_LINEAR_RESOLVENT: "||(1+S(tau))^-1 - (1+H)^-1|| <= M_1 tau",
    BoundId.STRICT_CONTRACTION: "0 <= F(tau) <= (1 - delta) for tau >= eps",
    BoundId.INFINITE_INTERVAL: "||(1+tS)^-1 - (1+tH)^-1|| <= M_1 (1+mu_e)(1+mu)/(mu_e mu) tau/t",
    BoundId.CUBE_ROOT: "||F^n - e^{n(F-1)}|| <= (2K+2)/n^{1/3}",
    BoundId.SECTORIAL_RESOLVENT: "||(z+S(tau))^-1 - (z+H)^-1|| <= L tau / dist(z,-S_a)",
    BoundId.SECTORIAL_SUP_RATE: "sup_t ||F(t/n)^n - e^{-tH}|| <= C / n^{1/3}",
    BoundId.SEMIGROUP_RESOLVENT_RATIO: "||e^{-tS} - e^{-tH}|| <= (M'/t) e^{t d'} ||(1+S)^-1 - (1+H)^-1||",
    BoundId.LEMMA_CONSTANT: "||e^{-K} - e^{-L}|| <= c ||(1+K)^-1 - (1+L)^-1||",
    BoundId.TROTTER_KATO_NONSYM: "||(f g)^n - e^{-tH}|| <= sum of decomposition pieces",
}

# Dyadic refinement 2^3 .. 2^10
DEFAULT_N_LIST: tuple[int, ...] = tuple(2**k for k in range(3, 11))

# Minimum usable samples for a log-log rate fit
MIN_FIT_SAMPLES = 4
