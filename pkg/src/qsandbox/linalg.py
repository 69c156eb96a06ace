"""Dense complex linear algebra for small qubit operators.

Everything here works on numpy complex128 arrays of dimension 2, 4 or 8
(1 to 3 qubits). Matrices are plain ndarrays; the wrapper types live in
`states`. Qubit 0 is always the leftmost (most significant) tensor factor,
so basis index  b = q0*2^(n-1) + ... + q_{n-1}.

All functions are pure and safe to call from any thread.
"""
from __future__ import annotations

import numpy as np

from .errors import ContractError, NumericError

QUBIT_DIMS = (2, 4, 8)

DEFAULT_TOL = 1e-9

# Taylor terms allowed for the scaled matrix before giving up.
_EXPM_MAX_TERMS = 64


def as_operator(a) -> np.ndarray:
    """Coerce to a square complex128 matrix of dim 2, 4 or 8 and check finiteness."""
    mat = np.asarray(a, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] not in QUBIT_DIMS:
        raise ContractError(f"dimension {mat.shape[0]} not in {QUBIT_DIMS}")
    if not np.all(np.isfinite(mat)):
        raise NumericError("matrix contains non-finite entries")
    return mat


def matmul(a, b) -> np.ndarray:
    """Standard matrix product; dims must agree."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(a, dtype=np.complex128)).T.copy()


def trace(a) -> complex:
    """Sum of diagonal entries."""
    return complex(np.trace(np.asarray(a, dtype=np.complex128)))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product, (alpha,beta)x(gamma,delta) = (ag, ad, bg, bd) ordering.

    Both operands must be the same kind: two matrices or two vectors.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ContractError(
            f"tensor_product needs two vectors or two matrices, got ndim {a.ndim} and {b.ndim}"
        )
    return np.kron(a, b)


def expm(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring over a truncated Taylor series.

    The input is halved until its Frobenius norm is <= 0.5, the series is
    summed until the next term drops below tol / (dim * 2^squarings) (each
    squaring roughly doubles the accumulated error), then squared back up.
    Elementwise error stays below tol for spectral norms up to ~50.
    """
    if tol <= 0:
        raise ContractError("tol must be positive")
    a = as_operator(a)
    dim = a.shape[0]
    norm = float(np.linalg.norm(a))
    n_sq = 0
    if norm > 0.5:
        n_sq = int(np.ceil(np.log2(norm / 0.5)))
    scaled = a / (2.0 ** n_sq)
    cutoff = tol / (dim * 2.0 ** n_sq)

    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, _EXPM_MAX_TERMS + 1):
        term = term @ scaled / k
        result += term
        if np.linalg.norm(term) < cutoff:
            break
    else:
        raise NumericError(
            f"expm series did not converge within {_EXPM_MAX_TERMS} terms (norm {norm:.3g})"
        )
    for _ in range(n_sq):
        result = result @ result
    return result


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    """True iff max elementwise |U U^dag - I| <= tol."""
    if tol <= 0:
        raise ContractError("tol must be positive")
    u = as_operator(u)
    dev = u @ dagger(u) - np.eye(u.shape[0])
    return float(np.max(np.abs(dev))) <= tol


def hermiticity_violation(a) -> float:
    """Max elementwise |A - A^dag|."""
    a = np.asarray(a, dtype=np.complex128)
    return float(np.max(np.abs(a - dagger(a))))
