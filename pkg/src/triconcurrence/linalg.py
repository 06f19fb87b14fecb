"""Dense complex-matrix primitives: eigenvalues, trace norm, Kronecker products,
and the row-major index convention shared by every module."""

from __future__ import annotations

import numpy as np

HERMITICITY_ATOL = 1e-9


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    mat = np.asarray(a, dtype=complex)
    if mat.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {mat.ndim}")
    if not np.isfinite(mat).all():
        raise ValueError("matrix contains NaN or infinite entries")
    return mat


def flatten_index(idx: tuple[int, int, int], dims: tuple[int, int, int]) -> int:
    """Map a basis triple (i, j, k) to its row-major linear index i*(n*l) + j*l + k."""
    i, j, k = idx
    m, n, l = dims
    if not (0 <= i < m and 0 <= j < n and 0 <= k < l):
        raise ValueError(f"index {idx} out of range for dims {tuple(dims)}")
    return i * (n * l) + j * l + k


def unflatten_index(pos: int, dims: tuple[int, int, int]) -> tuple[int, int, int]:
    """Inverse of :func:`flatten_index`."""
    m, n, l = dims
    if not 0 <= pos < m * n * l:
        raise ValueError(f"linear index {pos} out of range for dims {tuple(dims)}")
    i, rem = divmod(pos, n * l)
    j, k = divmod(rem, l)
    return i, j, k


def hermitianize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (A + A†) / 2."""
    return (a + a.conj().T) / 2


def hermiticity_defect(a: np.ndarray) -> float:
    """Max absolute deviation of A from A†."""
    return float(np.abs(a - a.conj().T).max(initial=0.0))


def hermitian_eigenvalues(a, atol: float = HERMITICITY_ATOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    The input must be square and Hermitian within `atol`; it is symmetrized
    before the eigensolver to suppress round-off accumulated by projection
    chains.
    """
    mat = as_complex_matrix(a)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix is not square: shape {mat.shape}")
    defect = hermiticity_defect(mat)
    if defect > atol:
        raise ValueError(f"matrix is not Hermitian: max |A - A†| = {defect:.3e} > {atol:.1e}")
    w = np.linalg.eigvalsh(hermitianize(mat))
    return w[::-1].copy()


def trace_norm(a) -> float:
    """Sum of singular values of a rectangular complex matrix."""
    mat = as_complex_matrix(a)
    return float(np.linalg.svd(mat, compute_uv=False).sum())


def kron(a, b) -> np.ndarray:
    """Kronecker product, row-major, consistent with :func:`flatten_index`."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))
