import numpy as np
import pytest
import scipy.linalg

from qsandbox.errors import ContractError, NumericError
from qsandbox.linalg import (
    dagger,
    expm,
    is_unitary,
    matmul,
    tensor_product,
    trace,
)
from qsandbox.gates import gate_matrix
from qsandbox.exchange import exchange_unitary_closed, shifted_hamiltonian

from conftest import random_unitary

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class TestMatmul:
    def test_identity(self):
        assert np.array_equal(matmul(I2, X), X)

    def test_pauli_x_squares_to_identity(self):
        assert np.array_equal(matmul(X, X), I2)

    def test_hadamard_squares_to_identity(self):
        assert np.allclose(matmul(H, H), I2, atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ContractError):
            matmul(I2, I4)

    def test_nonfinite_rejected(self):
        bad = I2.copy()
        bad[0, 0] = np.nan
        with pytest.raises(NumericError):
            matmul(bad, I2)


class TestDagger:
    def test_s_gate(self):
        assert np.array_equal(dagger(S), np.array([[1, 0], [0, -1j]]))

    def test_real_symmetric_fixed(self):
        assert np.array_equal(dagger(H), H)
        assert np.array_equal(dagger(I4), I4)

    def test_involution_exact(self, rng):
        a = rng.integers(-5, 6, size=(4, 4)) + 1j * rng.integers(-5, 6, size=(4, 4))
        assert np.array_equal(dagger(dagger(a)), a.astype(np.complex128))

    def test_antihomomorphism_exact_on_exact_inputs(self, rng):
        # small integers keep every product and sum exact
        a = (rng.integers(-4, 5, size=(4, 4)) + 1j * rng.integers(-4, 5, size=(4, 4)))
        b = (rng.integers(-4, 5, size=(4, 4)) + 1j * rng.integers(-4, 5, size=(4, 4)))
        assert np.array_equal(dagger(matmul(a, b)), matmul(dagger(b), dagger(a)))


class TestTrace:
    def test_identity(self):
        assert trace(I4) == 4

    def test_pure_projector(self):
        assert trace(np.diag([1.0, 0.0]).astype(complex)) == 1

    def test_sigma_z(self):
        assert trace(SZ) == 0

    def test_cyclic_property(self, rng):
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) <= 1e-12


class TestTensorProduct:
    def test_plus_times_zero(self):
        got = tensor_product(np.array([1, 1]) / np.sqrt(2), np.array([1, 0]))
        assert np.allclose(got, np.array([1, 0, 1, 0]) / np.sqrt(2), atol=1e-15)

    def test_identity_blocks(self):
        assert np.array_equal(tensor_product(I2, I2), I4)

    def test_component_layout(self, rng):
        a, b, g, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        got = tensor_product(np.array([a, b]), np.array([g, d]))
        assert np.allclose(got, np.array([a * g, a * d, b * g, b * d]), atol=1e-15)

    def test_mixed_kinds_rejected(self):
        with pytest.raises(ContractError):
            tensor_product(np.array([1, 0]), I2)

    def test_associativity(self, rng):
        for _ in range(20):
            mats = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                    for _ in range(3)]
            left = tensor_product(tensor_product(mats[0], mats[1]), mats[2])
            right = tensor_product(mats[0], tensor_product(mats[1], mats[2]))
            assert np.max(np.abs(left - right)) <= 1e-12


class TestExpm:
    def test_zero_matrix(self):
        assert np.array_equal(expm(np.zeros((4, 4), dtype=complex)), I4)

    def test_euler_formula_on_sigma_x(self):
        # e^{i pi sigma_x} = cos(pi) I + i sin(pi) sigma_x = -I
        got = expm(1j * np.pi * X)
        assert np.max(np.abs(got + I2)) <= 1e-9

    @pytest.mark.parametrize("j", [0.1, 1.0, 5.0])
    @pytest.mark.parametrize("t", [0.1, 1.0, np.pi])
    def test_matches_exchange_closed_form(self, j, t):
        got = expm(-1j * t * shifted_hamiltonian(j))
        assert np.max(np.abs(got - exchange_unitary_closed(t, j))) <= 1e-9

    def test_against_scipy_on_random_hermitian(self, rng):
        for scale in (0.3, 3.0, 30.0):
            z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
            herm = (z + z.conj().T) / 2
            herm *= scale / np.linalg.norm(herm, 2)
            got = expm(-1j * herm)
            want = scipy.linalg.expm(-1j * herm)
            assert np.max(np.abs(got - want)) <= 1e-9

    def test_inverse_pairing(self, rng):
        tol = 1e-9
        for _ in range(10):
            z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            herm = (z + z.conj().T) / 2
            herm *= 5.0 / np.linalg.norm(herm)
            prod = matmul(expm(herm, tol), expm(-herm, tol))
            assert np.max(np.abs(prod - I4)) <= 10 * tol

    def test_bad_tolerance(self):
        with pytest.raises(ContractError):
            expm(I2, tol=0.0)


class TestIsUnitary:
    def test_hadamard(self):
        assert is_unitary(H, 1e-10)

    def test_cnot(self):
        assert is_unitary(gate_matrix("CNOT"), 1e-10)

    def test_scaled_identity_fails(self):
        assert not is_unitary(2 * I2, 1e-10)

    def test_random_unitary_passes(self, rng):
        for dim in (2, 4, 8):
            assert is_unitary(random_unitary(rng, dim), 1e-10)
