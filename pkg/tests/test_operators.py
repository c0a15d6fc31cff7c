"""Tests for the dense operator layer and matrix interchange."""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from src.errors import NegativeTau, NonFinite, NotHermitian, SingularShift
from src.linalg.generators import (
    random_contraction,
    random_hermitian,
    random_psd,
    random_sectorial,
)
from src.linalg.interchange import load_operator, operator_from_dict, save_operator
from src.linalg.operators import (
    Operator,
    hermitian_eig,
    is_psd,
    matrix_exp,
    matrix_function,
    matrix_power,
    operator_norm,
    resolvent_shift,
)


class TestOperator:
    """Tests for the Operator value type."""

    def test_rejects_non_square(self):
        """Test that a non-square matrix is rejected."""
        with pytest.raises(ValueError):
            Operator(np.zeros((2, 3)))

    def test_rejects_nan(self):
        """Test that NaN entries raise NonFinite."""
        with pytest.raises(NonFinite):
            Operator(np.array([[1.0, np.nan], [0.0, 1.0]]))

    def test_entries_are_read_only(self):
        """Test that an operator cannot be mutated in place."""
        A = Operator.identity(2)
        with pytest.raises(ValueError):
            A.entries[0, 0] = 5.0

    def test_arithmetic(self):
        """Test matmul, addition and scalar multiplication."""
        A = Operator.diag([1.0, 2.0])
        B = Operator.diag([3.0, 4.0])
        assert (A @ B).equals(Operator.diag([3.0, 8.0]))
        assert (A + B).equals(Operator.diag([4.0, 6.0]))
        assert (2 * A).equals(Operator.diag([2.0, 4.0]))
        assert (B - A).equals(Operator.diag([2.0, 2.0]))


class TestOperatorNorm:
    """Tests for the spectral norm."""

    def test_known_values(self, nilpotent):
        """Test the norm of identity, nilpotent and diagonal matrices."""
        assert operator_norm(Operator.identity(4)) == pytest.approx(1.0)
        assert operator_norm(nilpotent) == pytest.approx(1.0)
        assert operator_norm(Operator.diag([3.0, -4.0])) == pytest.approx(4.0)
        assert operator_norm(Operator.zeros(3)) == 0.0

    def test_submultiplicative(self, rng):
        """Test ||AB|| <= ||A|| ||B|| on random matrices."""
        for _ in range(20):
            A = random_contraction(rng, 6) * 3.0
            B = random_hermitian(rng, 6, 2.0)
            assert operator_norm(A @ B) <= operator_norm(A) * operator_norm(B) * (1 + 1e-12)


class TestHermitianEig:
    """Tests for the Hermitian eigen-decomposition."""

    def test_diagonal_and_pauli(self):
        """Test eigenvalues of diag(0, 1) and the Pauli X matrix."""
        assert np.allclose(hermitian_eig(Operator.diag([0.0, 1.0])).eigenvalues, [0.0, 1.0])
        pauli_x = Operator(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(hermitian_eig(pauli_x).eigenvalues, [-1.0, 1.0])

    def test_reconstruction_and_unitarity(self, rng):
        """Test that U diag(lambda) U* reproduces H and U is unitary."""
        H = random_hermitian(rng, 8, 5.0)
        spectrum = hermitian_eig(H)
        u = spectrum.eigenvectors
        assert np.max(np.abs(spectrum.reconstruct().entries - H.entries)) <= 1e-10 * (
            1 + operator_norm(H)
        )
        assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-12)
        assert np.all(np.diff(spectrum.eigenvalues) >= 0)

    def test_rejects_non_hermitian(self, nilpotent):
        """Test that a non-Hermitian input raises NotHermitian with its deviation."""
        with pytest.raises(NotHermitian) as exc_info:
            hermitian_eig(nilpotent)
        assert exc_info.value.deviation == pytest.approx(1.0)

    def test_is_psd(self):
        """Test PSD detection."""
        assert is_psd(Operator.diag([0.0, 2.0]))
        assert not is_psd(Operator.diag([-1.0, 2.0]))


class TestMatrixFunction:
    """Tests for the spectral functional calculus."""

    def test_exp_of_diagonal(self):
        """Test phi = exp(-s) on a diagonal matrix."""
        result = matrix_function(hermitian_eig(Operator.diag([0.0, 1.0])), lambda s: math.exp(-s))
        assert result.equals(Operator.diag([1.0, math.exp(-1.0)]))

    def test_constant_gives_identity(self, rng):
        """Test that phi = 1 returns the identity."""
        spectrum = hermitian_eig(random_hermitian(rng, 5))
        assert matrix_function(spectrum, lambda s: 1.0).equals(Operator.identity(5), 1e-12)

    def test_square_matches_product(self, rng):
        """Test that phi = s^2 equals H @ H."""
        H = random_hermitian(rng, 6, 3.0)
        assert matrix_function(hermitian_eig(H), lambda s: s * s).equals(H @ H, 1e-10)

    def test_non_finite_values(self):
        """Test that an infinite phi raises NonFinite."""
        with pytest.raises(NonFinite):
            matrix_function(hermitian_eig(Operator.diag([0.0, 1.0])), lambda s: float("inf"))


class TestMatrixExp:
    """Tests for exp(-tA)."""

    def test_zero_generator(self):
        """Test that exp(0) is the identity."""
        assert matrix_exp(Operator.zeros(3), 2.0).equals(Operator.identity(3))

    def test_scalar(self):
        """Test exp(-1) for A = [[1]]."""
        assert matrix_exp(Operator.diag([1.0]), 1.0).entries[0, 0] == pytest.approx(math.exp(-1))

    def test_negative_t(self):
        """Test that t < 0 raises NegativeTau."""
        with pytest.raises(NegativeTau):
            matrix_exp(Operator.identity(2), -0.1)

    def test_matches_spectral_oracle(self, rng):
        """Test Pade exponential against the spectral exponential for PSD H."""
        for t in (0.1, 1.0, 10.0):
            H = random_psd(rng, 8, spectral_radius=5.0)
            oracle = matrix_function(hermitian_eig(H), lambda s, t=t: math.exp(-t * s))
            assert operator_norm(matrix_exp(H, t) - oracle) <= 1e-10

    def test_semigroup_law(self, rng):
        """Test exp(-(s+t)A) = exp(-sA) exp(-tA) for a non-normal A."""
        A = random_sectorial(rng, 6, math.pi / 4)
        lhs = matrix_exp(A, 0.7)
        rhs = matrix_exp(A, 0.3) @ matrix_exp(A, 0.4)
        assert lhs.equals(rhs, 1e-12)


class TestMatrixPower:
    """Tests for A^n."""

    def test_zero_power(self, rng):
        """Test that A^0 is the identity."""
        assert matrix_power(random_contraction(rng, 4), 0).equals(Operator.identity(4))

    def test_diagonal(self):
        """Test 0.5^4 on a scalar."""
        assert matrix_power(Operator.diag([0.5]), 4).entries[0, 0] == pytest.approx(0.0625)

    def test_matches_naive_product(self, rng):
        """Test binary exponentiation against repeated multiplication."""
        A = random_contraction(rng, 8)
        naive = Operator.identity(8)
        for _ in range(7):
            naive = naive @ A
        assert operator_norm(matrix_power(A, 7) - naive) <= 1e-12

    def test_negative_power(self):
        """Test that n < 0 is rejected."""
        with pytest.raises(ValueError):
            matrix_power(Operator.identity(2), -1)


class TestResolventShift:
    """Tests for (zeta + A)^-1."""

    def test_scalar_and_zero(self):
        """Test two closed-form resolvents."""
        assert resolvent_shift(Operator.diag([1.0]), 1.0).entries[0, 0] == pytest.approx(0.5)
        assert resolvent_shift(Operator.zeros(2), 2.0).equals(Operator.identity(2) * 0.5)

    def test_singular_shift(self):
        """Test that zeta = -1 on A = 1 raises SingularShift."""
        with pytest.raises(SingularShift):
            resolvent_shift(Operator.diag([1.0]), -1.0)

    def test_resolvent_identity(self, rng):
        """Test R(z1) - R(z2) = (z2 - z1) R(z1) R(z2)."""
        A = random_psd(rng, 6, 3.0)
        z1, z2 = 1.0, 2.0 + 1.0j
        r1, r2 = resolvent_shift(A, z1), resolvent_shift(A, z2)
        assert (r1 - r2).equals((r1 @ r2) * (z2 - z1), 1e-12)


class TestInterchange:
    """Tests for the {dim, re, im} matrix object."""

    def test_file_round_trip(self, tmp_path, rng):
        """Test that save then load reproduces the matrix exactly."""
        A = random_contraction(rng, 3)
        path = tmp_path / "m.json"
        save_operator(A, path)
        assert np.array_equal(load_operator(path).entries, A.entries)

    def test_missing_imaginary_part(self):
        """Test that im defaults to zero."""
        A = operator_from_dict({"dim": 2, "re": [[0, 1], [0, 0]]})
        assert A.equals(Operator(np.array([[0.0, 1.0], [0.0, 0.0]])))

    def test_shape_mismatch(self):
        """Test that a declared dim that disagrees with re is rejected."""
        with pytest.raises(ValueError):
            operator_from_dict({"dim": 3, "re": [[1, 0], [0, 1]]})


class TestOperatorProperties:
    """Property-based checks over seeded random ensembles."""

    @given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 8), t=st.floats(0.0, 20.0))
    @hyp_settings(max_examples=40, deadline=None)
    def test_psd_semigroup_is_contraction(self, seed, d, t):
        """Test ||exp(-tH)|| <= 1 for Hermitian PSD H."""
        H = random_psd(np.random.default_rng(seed), d, spectral_radius=10.0)
        assert operator_norm(matrix_exp(H, t)) <= 1.0 + 1e-12

    @given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 8), tau=st.floats(0.0, 50.0))
    @hyp_settings(max_examples=40, deadline=None)
    def test_psd_resolvent_is_contraction(self, seed, d, tau):
        """Test ||(1 + tau H)^-1|| <= 1 for Hermitian PSD H."""
        H = random_psd(np.random.default_rng(seed), d, spectral_radius=10.0)
        assert operator_norm(resolvent_shift(H * tau, 1.0)) <= 1.0 + 1e-12
