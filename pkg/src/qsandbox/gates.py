"""Canonical gate matrices, n-qubit embedding, and density-matrix application.

Gate set is fixed to {I, X, Z, H, S, CNOT}. CNOT takes (control, target);
its embedding for arbitrary qubit pairs is the projector sum
|0><0|_c (x) I + |1><1|_c (x) X_t, which is easy to verify against brute
force over basis states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .linalg import dagger, is_unitary, tensor_product
from .states import DensityMatrix

_S2 = 1.0 / np.sqrt(2.0)

_SINGLE = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=np.complex128),
    "S": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
}

_CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=np.complex128,
)

GATE_ARITY = {name: 1 for name in _SINGLE} | {"CNOT": 2}

_P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)


@dataclass(frozen=True)
class GateSpec:
    """A named gate with its target qubits (control first for CNOT)."""

    name: str
    targets: tuple

    def __post_init__(self):
        if self.name not in GATE_ARITY:
            raise ContractError(f"unknown gate {self.name!r}")
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != GATE_ARITY[self.name]:
            raise ContractError(
                f"{self.name} takes {GATE_ARITY[self.name]} target(s), got {len(targets)}"
            )
        if len(set(targets)) != len(targets):
            raise ContractError(f"duplicate targets {targets}")


def gate_matrix(name: str) -> np.ndarray:
    """The canonical matrix for a gate name."""
    if name in _SINGLE:
        return _SINGLE[name].copy()
    if name == "CNOT":
        return _CNOT.copy()
    raise ContractError(f"unknown gate {name!r}")


def _kron_chain(factors) -> np.ndarray:
    out = factors[0]
    for f in factors[1:]:
        out = tensor_product(out, f)
    return out


def embed_gate(spec: GateSpec, n_qubits: int) -> np.ndarray:
    """Lift a gate onto the full 2^n space (qubit 0 = leftmost factor)."""
    if not 1 <= n_qubits <= 3:
        raise ContractError(f"n_qubits {n_qubits} outside [1, 3]")
    if any(t >= n_qubits for t in spec.targets):
        raise ContractError(f"targets {spec.targets} out of range for {n_qubits} qubits")

    eye = _SINGLE["I"]
    if spec.name in _SINGLE:
        target = spec.targets[0]
        factors = [_SINGLE[spec.name] if q == target else eye for q in range(n_qubits)]
        return _kron_chain(factors)

    control, target = spec.targets
    off = [_P0 if q == control else eye for q in range(n_qubits)]
    on = [
        _P1 if q == control else (_SINGLE["X"] if q == target else eye)
        for q in range(n_qubits)
    ]
    return _kron_chain(off) + _kron_chain(on)


def apply_unitary(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """Conjugate rho by a unitary: U rho U^dag."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != rho.mat.shape:
        raise ContractError(f"operator dim {u.shape[0]} != state dim {rho.dim}")
    if not is_unitary(u, 1e-8):
        raise ContractError("operator is not unitary; refusing to corrupt the state")
    return DensityMatrix(rho.n_qubits, u @ rho.mat @ dagger(u))


def make_bell(rho: DensityMatrix) -> DensityMatrix:
    """Apply CNOT(0 -> 1) to a 2-qubit state; |+>|0> becomes the Phi+ pair."""
    if rho.n_qubits != 2:
        raise ContractError(f"make_bell needs 2 qubits, got {rho.n_qubits}")
    return apply_unitary(rho, embed_gate(GateSpec("CNOT", (0, 1)), 2))
