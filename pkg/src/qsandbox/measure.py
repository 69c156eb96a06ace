"""Single-qubit z-basis projective measurement with seeded collapse.

Outcome probabilities come off the diagonal of the qubit's reduced matrix.
Collapse conjugates the global state by the embedded projector divided by
sqrt(p_s), which keeps the total density matrix normalized.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, NumericError
from .states import DensityMatrix, partial_trace

# Past this probability the other branch cannot be renormalized sensibly;
# the outcome is forced instead of drawn.
_FORCE_AT = 1.0 - 1e-12


@dataclass(frozen=True)
class MeasurementOutcome:
    qubit: int
    s: int
    p0: float
    p1: float
    rng_draw: float


def projector_z(s: int) -> np.ndarray:
    """(I + (-1)^s sigma_z)/2: |0><0| for s=0, |1><1| for s=1."""
    if s not in (0, 1):
        raise ContractError(f"s must be 0 or 1, got {s}")
    p = np.zeros((2, 2), dtype=np.complex128)
    p[s, s] = 1.0
    return p


def outcome_probabilities(rho_global: DensityMatrix, qubit: int) -> tuple:
    """(p0, p1) for a z measurement of one qubit."""
    if not 0 <= qubit < rho_global.n_qubits:
        raise ContractError(f"qubit {qubit} out of range")
    reduced = partial_trace(rho_global, (qubit,))
    p0 = float(reduced.mat[0, 0].real)
    p1 = float(reduced.mat[1, 1].real)
    if abs(p0 + p1 - 1.0) > 1e-9:
        raise NumericError(f"probabilities sum to {p0 + p1}, state corrupted")
    return p0, p1


def measure_collapse(rho_global: DensityMatrix, qubit: int, rng) -> tuple:
    """Draw an outcome, collapse and renormalize.

    Always consumes exactly one rng draw so replays stay aligned. Returns
    (MeasurementOutcome, collapsed DensityMatrix).
    """
    p0, p1 = outcome_probabilities(rho_global, qubit)
    draw = float(rng.random())
    if p0 >= _FORCE_AT:
        s = 0
    elif p1 >= _FORCE_AT:
        s = 1
    else:
        s = 0 if draw < p0 else 1
    p_s = p0 if s == 0 else p1
    if p_s <= 0.0:
        raise NumericError(f"cannot renormalize: p_{s} = {p_s}")

    proj = projector_z(s)
    n = rho_global.n_qubits
    full = np.eye(1, dtype=np.complex128)
    for q in range(n):
        full = np.kron(full, proj if q == qubit else np.eye(2, dtype=np.complex128))
    e_s = full / np.sqrt(p_s)
    collapsed = DensityMatrix(n, e_s @ rho_global.mat @ e_s.conj().T)
    return MeasurementOutcome(qubit, s, p0, p1, draw), collapsed
