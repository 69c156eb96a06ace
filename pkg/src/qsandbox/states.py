"""State representations: pure-state angles, density matrices, Bloch vectors.

Sign convention for the Bloch y component: v = 2*Im(rho_10), i.e. the
expectation of sigma_y. Under this choice the S gate rotates +X onto +Y.
The u and w components are u = 2*Re(rho_01) and w = rho_00 - rho_11.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, NumericError
from .linalg import as_operator, dagger

MAX_QUBITS = 3

# Residual imaginary parts below this are floating noise and get truncated;
# anything larger signals upstream hermiticity corruption.
_IMAG_NOISE = 1e-9


@dataclass(frozen=True)
class BlochAngles:
    """Polar/azimuthal angles of a pure single-qubit state."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ContractError(f"theta {self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ContractError(f"phi {self.phi} outside [0, 2*pi)")


@dataclass(frozen=True)
class PureState:
    """Amplitudes of |0> and |1>."""

    alpha: complex
    beta: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)


@dataclass(frozen=True)
class BlochVector:
    u: float
    v: float
    w: float


@dataclass
class DensityMatrix:
    """2^n x 2^n density matrix over n qubits (n in [1, 3])."""

    n_qubits: int
    mat: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ContractError(f"n_qubits {self.n_qubits} outside [1, {MAX_QUBITS}]")
        self.mat = as_operator(self.mat)
        if self.mat.shape[0] != 2 ** self.n_qubits:
            raise ContractError(
                f"matrix dim {self.mat.shape[0]} does not match {self.n_qubits} qubits"
            )

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def copy(self) -> "DensityMatrix":
        return DensityMatrix(self.n_qubits, self.mat.copy())


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of validate_density: the deviations, and the tolerance used."""

    trace_deviation: float
    hermiticity_violation: float
    min_eigenvalue: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.trace_deviation <= self.tol
            and self.hermiticity_violation <= self.tol
            and self.min_eigenvalue >= -self.tol
        )

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"{status}: |tr-1|={self.trace_deviation:.3g} "
            f"herm={self.hermiticity_violation:.3g} "
            f"min_eig={self.min_eigenvalue:.3g} (tol {self.tol:.1g})"
        )


def state_from_angles(angles: BlochAngles) -> PureState:
    """alpha = cos(theta/2), beta = e^{i phi} sin(theta/2)."""
    half = angles.theta / 2.0
    return PureState(
        alpha=complex(math.cos(half)),
        beta=complex(math.cos(angles.phi), math.sin(angles.phi)) * math.sin(half),
    )


def density_from_state(psi: PureState) -> DensityMatrix:
    """Outer product |psi><psi| of a single-qubit pure state."""
    norm = abs(psi.alpha) ** 2 + abs(psi.beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise ContractError(f"state not normalized: |alpha|^2+|beta|^2 = {norm}")
    return density_from_vector(psi.vector)


def density_from_vector(vec) -> DensityMatrix:
    """Outer product of an n-qubit state vector with its conjugate."""
    vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
    n = int(round(math.log2(vec.size)))
    if 2 ** n != vec.size:
        raise ContractError(f"vector length {vec.size} is not a power of 2")
    return DensityMatrix(n, np.outer(vec, vec.conj()))


def _real_component(value: complex, what: str) -> float:
    if abs(value.imag) > _IMAG_NOISE:
        raise NumericError(f"{what} has imaginary residue {value.imag:.3g}")
    return float(value.real)


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    """Bloch vector of a single-qubit density matrix (v = 2*Im(rho_10))."""
    if rho.n_qubits != 1:
        raise ContractError(f"bloch_from_density needs 1 qubit, got {rho.n_qubits}")
    m = rho.mat
    u = _real_component(m[0, 1] + m[1, 0], "u")
    v = _real_component(-1j * (m[1, 0] - m[0, 1]), "v")  # = 2*Im(rho_10) for hermitian rho
    w = _real_component(m[0, 0] - m[1, 1], "w")
    return BlochVector(u, v, w)


def bloch_radius(b: BlochVector) -> float:
    return math.sqrt(b.u ** 2 + b.v ** 2 + b.w ** 2)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix over the kept qubits.

    `keep` must be non-empty, strictly increasing and within range. Tracing
    is a sum over the computational basis of the discarded qubits.
    """
    n = rho.n_qubits
    keep = tuple(int(q) for q in keep)
    if not keep:
        raise ContractError("keep must not be empty")
    if list(keep) != sorted(set(keep)) or keep[0] < 0 or keep[-1] >= n:
        raise ContractError(f"invalid keep set {keep} for {n} qubits")
    if len(keep) == n:
        return rho.copy()

    # einsum with matching row/col letters on the traced qubits
    rows = [chr(ord("a") + q) for q in range(n)]
    cols = [rows[q] if q not in keep else chr(ord("a") + n + q) for q in range(n)]
    out = [rows[q] for q in keep] + [cols[q] for q in keep]
    tensor = rho.mat.reshape((2,) * (2 * n))
    reduced = np.einsum("".join(rows) + "".join(cols) + "->" + "".join(out), tensor)
    k = len(keep)
    return DensityMatrix(k, np.ascontiguousarray(reduced.reshape(2 ** k, 2 ** k)))


def validate_density(rho: DensityMatrix, tol: float = 1e-9) -> ValidityReport:
    """Report trace deviation, hermiticity violation and minimum eigenvalue."""
    if tol <= 0:
        raise ContractError("tol must be positive")
    m = rho.mat
    trace_dev = abs(complex(np.trace(m)) - 1.0)
    herm = float(np.max(np.abs(m - dagger(m))))
    # eigvalsh wants an exactly hermitian input; symmetrize first
    sym = (m + dagger(m)) / 2.0
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return ValidityReport(trace_dev, herm, min_eig, tol)
