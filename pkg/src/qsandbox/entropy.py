"""Entanglement metrics: Renyi-2 entropy, pairwise parameter, Bloch delocalization.

Tr[rho^2] is computed as sum |rho_kl|^2, which equals Tr[rho rho^dag] and
coincides with Tr[rho^2] for hermitian rho while staying exactly real.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ContractError, NumericError
from .states import BlochVector, DensityMatrix, bloch_from_density, partial_trace

LN2 = math.log(2.0)

# Pure states can land a hair above Tr[rho^2] = 1 through rounding; entropy
# values in [-1e-9, 0) clamp to 0, anything lower is corruption.
_CLAMP = 1e-9


def purity(rho: DensityMatrix) -> float:
    """Tr[rho^2] via the elementwise squared sum (exact-real for hermitian rho)."""
    return float(np.sum(np.abs(rho.mat) ** 2))


def renyi2(rho: DensityMatrix) -> float:
    """Second Renyi entropy -ln(Tr[rho^2])."""
    tr2 = purity(rho)
    if tr2 <= 0.0:
        raise NumericError(f"Tr[rho^2] = {tr2} <= 0; state is corrupted")
    s = -math.log(tr2)
    if s < 0.0:
        if s < -_CLAMP:
            raise NumericError(f"Renyi-2 entropy {s} below clamp window")
        return 0.0
    return s + 0.0  # normalizes -0.0 from ln(1.0)


def pairwise_entanglement(rho_global: DensityMatrix, i: int, j: int) -> float:
    """Pairwise parameter S2(rho_i) + S2(rho_j) - S2(rho_ij)."""
    n = rho_global.n_qubits
    if n < 2:
        raise ContractError("pairwise entanglement needs at least 2 qubits")
    if not 0 <= i < j < n:
        raise ContractError(f"need 0 <= i < j < {n}, got ({i}, {j})")
    s_i = renyi2(partial_trace(rho_global, (i,)))
    s_j = renyi2(partial_trace(rho_global, (j,)))
    s_ij = renyi2(partial_trace(rho_global, (i, j)))
    return s_i + s_j - s_ij


@dataclass(frozen=True)
class EntanglementReport:
    """Per-qubit entropy and Bloch vector, plus the pairwise parameters."""

    per_qubit_entropy: tuple
    per_qubit_bloch: tuple
    pair_parameters: dict  # (i, j) -> S~_ij, i < j


def build_report(rho_global: DensityMatrix) -> EntanglementReport:
    n = rho_global.n_qubits
    entropies = []
    blochs = []
    for q in range(n):
        r = partial_trace(rho_global, (q,))
        entropies.append(renyi2(r))
        blochs.append(bloch_from_density(r))
    pairs = {}
    for i, j in combinations(range(n), 2):
        s_ij = renyi2(partial_trace(rho_global, (i, j)))
        pairs[(i, j)] = entropies[i] + entropies[j] - s_ij
    return EntanglementReport(tuple(entropies), tuple(blochs), pairs)
