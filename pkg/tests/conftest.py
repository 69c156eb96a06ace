"""Shared test helpers: independent brute-force oracles and random inputs.

The oracles here deliberately avoid the library's own code paths: partial
traces are explicit basis sums, embeddings act on index bits directly.
"""
from __future__ import annotations

import numpy as np
import pytest


def brute_partial_trace(mat: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    """Explicit basis double-sum partial trace (qubit 0 = most significant bit)."""
    keep = tuple(keep)
    traced = [q for q in range(n_qubits) if q not in keep]
    k = len(keep)
    out = np.zeros((2 ** k, 2 ** k), dtype=np.complex128)

    def build_index(keep_bits, traced_bits):
        bits = [0] * n_qubits
        for q, b in zip(keep, keep_bits):
            bits[q] = b
        for q, b in zip(traced, traced_bits):
            bits[q] = b
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return idx

    def bit_tuples(m):
        return [tuple((x >> (m - 1 - i)) & 1 for i in range(m)) for x in range(2 ** m)]

    for r, rbits in enumerate(bit_tuples(k)):
        for c, cbits in enumerate(bit_tuples(k)):
            total = 0.0 + 0.0j
            for tbits in bit_tuples(len(traced)):
                total += mat[build_index(rbits, tbits), build_index(cbits, tbits)]
            out[r, c] = total
    return out


def brute_apply_on_bits(gate: np.ndarray, targets, n_qubits: int,
                        vec: np.ndarray) -> np.ndarray:
    """Apply a 2^k x 2^k gate to the target bits of a state vector directly."""
    k = len(targets)
    dim = 2 ** n_qubits
    out = np.zeros(dim, dtype=np.complex128)
    shifts = [n_qubits - 1 - q for q in range(n_qubits)]
    for idx in range(dim):
        amp = vec[idx]
        if amp == 0:
            continue
        sub = 0
        for t in targets:
            sub = (sub << 1) | ((idx >> shifts[t]) & 1)
        for new_sub in range(2 ** k):
            coeff = gate[new_sub, sub]
            if coeff == 0:
                continue
            new_idx = idx
            for pos, t in enumerate(targets):
                bit = (new_sub >> (k - 1 - pos)) & 1
                new_idx = (new_idx & ~(1 << shifts[t])) | (bit << shifts[t])
            out[new_idx] += coeff * amp
    return out


def random_state_vector(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    vec = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return vec / np.linalg.norm(vec)


def random_density_mat(rng: np.random.Generator, n_qubits: int,
                       mixed: bool = False) -> np.ndarray:
    """Random density matrix: pure by default, a pure-state mixture if mixed."""
    if not mixed:
        vec = random_state_vector(rng, n_qubits)
        return np.outer(vec, vec.conj())
    weights = rng.dirichlet(np.ones(3))
    out = np.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=np.complex128)
    for wgt in weights:
        vec = random_state_vector(rng, n_qubits)
        out += wgt * np.outer(vec, vec.conj())
    return out


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


class FakeRng:
    """Scripted stand-in for a Generator; returns queued draws in order."""

    def __init__(self, draws):
        self._draws = list(draws)

    def random(self):
        return self._draws.pop(0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)
