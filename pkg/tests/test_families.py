"""Tests for Chernoff families and their JSON descriptions."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.config.constants import FamilyKind, RegularityKind
from src.errors import NegativeTau, NonPositiveTau, RegularityMismatch, ScenarioError
from src.families.chernoff import (
    Regularity,
    eval_F,
    eval_S,
    make_exp_family,
    make_kato_family,
    make_resolvent_family,
    make_symmetrized_family,
    make_trotter_family,
    sqrt_kato_factor,
)
from src.families.kato import get_kato
from src.families.specs import FamilySpec, build_family, build_operator
from src.linalg.generators import random_psd, random_sectorial
from src.linalg.operators import Operator, hermitian_eig, matrix_exp, operator_norm


class TestRegularity:
    """Tests for regularity parsing."""

    def test_parse(self):
        """Test the three textual forms."""
        assert Regularity.parse("self-adjoint").kind == RegularityKind.SELF_ADJOINT
        assert Regularity.parse("general").kind == RegularityKind.GENERAL
        qs = Regularity.parse("quasi-sectorial:0.5")
        assert qs.kind == RegularityKind.QUASI_SECTORIAL
        assert qs.alpha == 0.5

    def test_parse_rejects_unknown(self):
        """Test that an unknown class is rejected."""
        with pytest.raises(ValueError):
            Regularity.parse("hyperbolic")


class TestResolventFamily:
    """Tests for F(tau) = (1 + tau H)^-1."""

    def test_zero_generator(self):
        """Test that H = 0 gives the identity for every tau."""
        fam = make_resolvent_family(Operator.zeros(3), Regularity.self_adjoint())
        for tau in (0.0, 0.5, 10.0):
            assert eval_F(fam, tau).equals(Operator.identity(3))

    def test_scalar(self):
        """Test F(1) = 1/2 for H = 1."""
        fam = make_resolvent_family(Operator.diag([1.0]), Regularity.self_adjoint())
        assert eval_F(fam, 1.0).entries[0, 0] == pytest.approx(0.5)

    def test_self_adjoint_contraction(self, resolvent_family):
        """Test that F(tau) is Hermitian with spectrum in [0, 1]."""
        spectrum = hermitian_eig(eval_F(resolvent_family, 0.3))
        assert spectrum.min_eigenvalue >= -1e-12
        assert spectrum.max_eigenvalue <= 1 + 1e-12

    def test_non_psd_generator(self):
        """Test that a negative eigenvalue fails the self-adjoint pre-check."""
        with pytest.raises(RegularityMismatch):
            make_resolvent_family(Operator.diag([-1.0, 1.0]), Regularity.self_adjoint())

    def test_non_hermitian_generator(self, nilpotent):
        """Test that a non-Hermitian H declared self-adjoint is rejected."""
        with pytest.raises(RegularityMismatch):
            make_resolvent_family(nilpotent, Regularity.self_adjoint())

    def test_quasi_sectorial_generator(self, rng):
        """Test that a sectorial H passes the quasi-sectorial pre-check."""
        H = random_sectorial(rng, 5, math.pi / 4)
        fam = make_resolvent_family(H, Regularity.quasi_sectorial(math.pi / 4))
        assert operator_norm(eval_F(fam, 0.5)) <= 1 + 1e-12

    def test_quasi_sectorial_rejects_negative(self):
        """Test that H = -1 is outside every sector."""
        with pytest.raises(RegularityMismatch):
            make_resolvent_family(Operator.diag([-1.0]), Regularity.quasi_sectorial(0.5))


class TestExpFamily:
    """Tests for the exact family exp(-tau H)."""

    def test_values(self):
        """Test F(0) = 1 and F(1) = e^-1 for H = 1."""
        fam = make_exp_family(Operator.diag([1.0]), Regularity.self_adjoint())
        assert eval_F(fam, 0.0).equals(Operator.identity(1))
        assert eval_F(fam, 1.0).entries[0, 0] == pytest.approx(math.exp(-1.0))

    def test_negative_tau(self, exp_family):
        """Test that tau < 0 raises NegativeTau."""
        with pytest.raises(NegativeTau):
            eval_F(exp_family, -1.0)


class TestKatoFamily:
    """Tests for F(tau) = f(tau A)."""

    @pytest.mark.parametrize(
        ("kato_id", "a", "tau", "expected"),
        [
            ("exp", 1.0, 2.0, math.exp(-2.0)),
            ("resolvent-1", 2.0, 0.5, 0.5),
            ("clipped-linear", 3.0, 1.0, 0.0),
        ],
    )
    def test_scalar_values(self, kato_id, a, tau, expected):
        """Test closed-form f(tau a)."""
        fam = make_kato_family(get_kato(kato_id), Operator.diag([a]))
        assert eval_F(fam, tau).entries[0, 0] == pytest.approx(expected)

    def test_rejects_non_psd(self):
        """Test that A must be PSD."""
        with pytest.raises(RegularityMismatch):
            make_kato_family(get_kato("exp"), Operator.diag([-0.5]))


class TestTrotterFamily:
    """Tests for F(tau) = f(tau A) g(tau B)."""

    def test_zero_second_part(self, rng):
        """Test that B = 0 reduces to exp(-tau A)."""
        A = random_psd(rng, 4)
        fam = make_trotter_family(A, Operator.zeros(4))
        assert eval_F(fam, 0.7).equals(matrix_exp(A, 0.7), 1e-12)

    def test_noncommuting_product(self, noncommuting_pair):
        """Test contraction, general regularity and generator A + B."""
        A, B = noncommuting_pair
        fam = make_trotter_family(A, B)
        assert fam.regularity.kind == RegularityKind.GENERAL
        assert fam.generator.equals(A + B)
        assert operator_norm(eval_F(fam, 0.2)) <= 1 + 1e-12

    def test_commuting_scalars(self):
        """Test exp(-1) exp(-1) = exp(-2)."""
        one = Operator.diag([1.0])
        fam = make_trotter_family(one, one)
        assert eval_F(fam, 1.0).entries[0, 0] == pytest.approx(math.exp(-2.0))


class TestSymmetrizedFamily:
    """Tests for F(tau) = g(tau B)^1/2 f(tau A) g(tau B)^1/2."""

    def test_zero_second_part(self, rng):
        """Test that B = 0 reduces to f(tau A)."""
        A = random_psd(rng, 4)
        f = get_kato("resolvent-1")
        fam = make_symmetrized_family(f, get_kato("exp"), A, Operator.zeros(4))
        expected = make_kato_family(f, A)
        assert eval_F(fam, 0.5).equals(eval_F(expected, 0.5), 1e-12)

    def test_self_adjoint_contraction(self, rng):
        """Test that F(tau) is Hermitian with spectrum in [0, 1]."""
        A, B = random_psd(rng, 4), random_psd(rng, 4)
        k = get_kato("resolvent-1")
        F = eval_F(make_symmetrized_family(k, k, A, B), 0.5)
        assert F.is_hermitian()
        spectrum = hermitian_eig(F)
        assert spectrum.min_eigenvalue >= -1e-12
        assert spectrum.max_eigenvalue <= 1 + 1e-12

    def test_square_root_orders_agree(self, rng):
        """Test that the square root taken before or after the functional calculus agree."""
        B = random_psd(rng, 5, 4.0)
        spectrum = hermitian_eig(B)
        g = get_kato("resolvent-2")
        after = sqrt_kato_factor(g, spectrum, 0.3, "after")
        before = sqrt_kato_factor(g, spectrum, 0.3, "before")
        assert after.equals(before, 1e-10)


class TestGeneratorConsistency:
    """Tests for S(tau) = (1 - F(tau))/tau."""

    def test_eval_s_values(self):
        """Test S(1) = 1/2 for the scalar resolvent and S = 0 for H = 0."""
        fam = make_resolvent_family(Operator.diag([1.0]), Regularity.self_adjoint())
        assert eval_S(fam, 1.0).entries[0, 0] == pytest.approx(0.5)
        zero = make_resolvent_family(Operator.zeros(2), Regularity.self_adjoint())
        assert eval_S(zero, 0.3).equals(Operator.zeros(2))

    def test_nonpositive_tau(self, resolvent_family):
        """Test that S(0) raises NonPositiveTau."""
        with pytest.raises(NonPositiveTau):
            eval_S(resolvent_family, 0.0)

    def test_first_order_consistency(self, rng):
        """Test ||S(tau) - H|| <= C tau for every family kind."""
        A, B = random_psd(rng, 4), random_psd(rng, 4)
        k = get_kato("resolvent-2")
        families = [
            make_resolvent_family(A, Regularity.self_adjoint()),
            make_exp_family(A, Regularity.self_adjoint()),
            make_kato_family(get_kato("clipped-linear"), A),
            make_trotter_family(A, B),
            make_symmetrized_family(k, k, A, B),
        ]
        for fam in families:
            ratios = [
                operator_norm(eval_S(fam, tau) - fam.generator) / tau
                for tau in (1e-1, 1e-2, 1e-3, 1e-4)
            ]
            assert max(ratios) <= 10.0, fam.kind


class TestFamilySpec:
    """Tests for the JSON family schema."""

    def test_interchange_object(self, matrix_object):
        """Test building a resolvent family from an explicit matrix."""
        spec = FamilySpec(kind="resolvent", H=matrix_object(np.diag([1.0, 2.0])))
        fam = build_family(spec)
        assert fam.kind == FamilyKind.RESOLVENT
        assert fam.regularity.kind == RegularityKind.SELF_ADJOINT

    def test_random_needs_seed(self):
        """Test that a random matrix without any seed is rejected."""
        spec = FamilySpec(kind="exponential", H="random:d=3,psd")
        with pytest.raises(ScenarioError):
            build_family(spec)

    def test_random_is_deterministic(self):
        """Test that the same seed yields the same family and roles draw different matrices."""
        spec = FamilySpec(kind="trotter", A="random:d=4,psd", B="random:d=4,psd")
        first, second = build_family(spec, 7), build_family(spec, 7)
        assert first.family_id == second.family_id
        A, B = first.parts
        assert not A.equals(B)
        assert build_family(spec, 8).family_id != first.family_id

    def test_own_seed_and_braces(self):
        """Test the braced form with an embedded seed."""
        op = build_operator("random:{d=3,seed=4,spectral_radius=2,hermitian}", "H", None)
        assert op.dim == 3
        assert op.is_hermitian()
        assert np.max(np.abs(hermitian_eig(op).eigenvalues)) == pytest.approx(2.0)

    def test_unknown_token(self):
        """Test that an unknown class token is rejected."""
        with pytest.raises(ScenarioError):
            build_operator("random:d=3,unitary", "H", 1)

    def test_missing_operand(self):
        """Test that a trotter spec without B fails validation."""
        with pytest.raises(ValidationError):
            FamilySpec(kind="trotter", A="random:d=2,psd")

    def test_unknown_kato(self):
        """Test that an unknown Kato id fails validation."""
        with pytest.raises(ValidationError):
            FamilySpec(kind="kato", A="random:d=2,psd", kato_f="sinc")

    def test_declared_regularity_mismatch(self):
        """Test that a trotter family declared self-adjoint is rejected."""
        spec = FamilySpec(
            kind="trotter", A="random:d=3,psd", B="random:d=3,psd", regularity="self-adjoint"
        )
        with pytest.raises(RegularityMismatch):
            build_family(spec, 1)

    def test_sectorial_token(self):
        """Test a quasi-sectorial resolvent family from a sectorial random generator."""
        spec = FamilySpec(
            kind="resolvent",
            H="random:d=4,spectral_radius=3,sectorial:0.785",
            regularity="quasi-sectorial:0.785",
        )
        fam = build_family(spec, 3)
        assert fam.regularity.alpha == pytest.approx(0.785)
