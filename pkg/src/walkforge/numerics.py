"""Dense complex linear algebra shared by the rest of the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Nothing here
mutates its inputs.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# structural comparisons of permutation-built matrices
EXACT_TOL = 1e-12
# products of floating unitaries
PRODUCT_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def as_matrix(m) -> np.ndarray:
    return np.asarray(m, dtype=np.complex128)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``a`` occupies the high-order index block."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Sequence) -> np.ndarray:
    out = identity(1)
    for f in factors:
        out = kron(out, f)
    return out


def direct_sum(blocks: Sequence) -> np.ndarray:
    """Block-diagonal matrix with ``blocks`` along the diagonal, in order."""
    mats = [as_matrix(b) for b in blocks]
    for b in mats:
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError(f"direct_sum needs square blocks, got shape {b.shape}")
    dim = sum(b.shape[0] for b in mats)
    out = np.zeros((dim, dim), dtype=np.complex128)
    at = 0
    for b in mats:
        d = b.shape[0]
        out[at : at + d, at : at + d] = b
        at += d
    return out


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def max_abs_diff(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def is_unitary(m, tol: float = EXACT_TOL) -> bool:
    m = as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"is_unitary needs a square matrix, got shape {m.shape}")
    return max_abs_diff(dagger(m) @ m, identity(m.shape[0])) <= tol


def is_permutation_matrix(m, tol: float = EXACT_TOL) -> bool:
    """True when every entry is 0 or 1 and each row and column holds exactly one 1."""
    m = as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if np.any(np.abs(m.imag) > tol):
        return False
    re = m.real
    ones = np.abs(re - 1) <= tol
    zeros = np.abs(re) <= tol
    if not np.all(ones | zeros):
        return False
    return bool(np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1))


def permutation_matrix(mapping: Sequence[int]) -> np.ndarray:
    """Matrix ``M`` with ``M[mapping[v], v] = 1``, i.e. ``M|v> = |mapping[v]>``."""
    dim = len(mapping)
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[np.asarray(mapping, dtype=np.intp), np.arange(dim)] = 1
    return out


def matpow(m, t: int) -> np.ndarray:
    """``m**t`` by repeated squaring; ``m**0`` is the identity."""
    if t < 0:
        raise ValueError("matpow needs t >= 0")
    m = as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matpow needs a square matrix, got shape {m.shape}")
    return np.linalg.matrix_power(m, t)


def vector_norm(v) -> float:
    return float(np.linalg.norm(np.asarray(v, dtype=np.complex128)))


def basis_vector(dim: int, index: int) -> np.ndarray:
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside [0, {dim})")
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1
    return v
