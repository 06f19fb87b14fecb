"""Tripartite state containers, named fixtures, noise families, and random
state generation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    HERMITICITY_ATOL,
    as_complex_matrix,
    flatten_index,
    hermitianize,
    hermiticity_defect,
)

NORM_ATOL = 1e-9
PSD_ATOL = 1e-9


@dataclass(frozen=True)
class TripartiteDims:
    """Local dimensions (m, n, l) of the three subsystems."""

    m: int
    n: int
    l: int

    def __post_init__(self):
        for d in (self.m, self.n, self.l):
            if int(d) != d or d < 1:
                raise ValueError(f"dimensions must be integers >= 1, got {(self.m, self.n, self.l)}")

    def __iter__(self):
        return iter((self.m, self.n, self.l))

    @property
    def total(self) -> int:
        return self.m * self.n * self.l

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.l)

    def sorted(self) -> tuple[int, int, int]:
        """Dimensions in non-decreasing order (canonical role ordering)."""
        return tuple(sorted((self.m, self.n, self.l)))


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized coefficient tensor over the product basis, shape (m, n, l)."""

    dims: TripartiteDims
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != self.dims.as_tuple():
            raise ValueError(f"coefficient tensor shape {coeffs.shape} != dims {self.dims.as_tuple()}")
        if not np.isfinite(coeffs).all():
            raise ValueError("coefficients contain NaN or infinite entries")
        norm = float(np.linalg.norm(coeffs))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |psi| = {norm:.12f}")
        object.__setattr__(self, "coeffs", _freeze(coeffs))

    @property
    def vector(self) -> np.ndarray:
        """Flattened amplitudes in row-major (flatten_index) order."""
        return self.coeffs.reshape(-1)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD matrix on the tripartite space; may be sub-normalized.

    Substates obtained by projection carry trace < 1 (possibly 0); every
    constructor in this package validates Hermiticity and positivity.
    """

    dims: TripartiteDims
    mat: np.ndarray = field(repr=False)
    trace_value: float

    @classmethod
    def from_matrix(cls, dims: TripartiteDims, mat) -> "DensityMatrix":
        """Validate and wrap a raw matrix: Hermitian within 1e-9 (then
        symmetrized), eigenvalues >= -1e-9, trace in [0, 1 + 1e-9]."""
        m = as_complex_matrix(mat)
        d = dims.total
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} incompatible with dims {dims.as_tuple()}")
        defect = hermiticity_defect(m)
        if defect > HERMITICITY_ATOL:
            raise ValueError(f"density matrix is not Hermitian: max |A - A†| = {defect:.3e}")
        m = hermitianize(m)
        w = np.linalg.eigvalsh(m)
        if w.size and w[0] < -PSD_ATOL:
            raise ValueError(f"density matrix is not PSD: min eigenvalue = {w[0]:.3e}")
        tr = float(np.trace(m).real)
        if tr < -1e-12 or tr > 1.0 + NORM_ATOL:
            raise ValueError(f"trace {tr:.12f} outside [0, 1]")
        return cls(dims=dims, mat=_freeze(m), trace_value=max(tr, 0.0))


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi| of a normalized pure state."""
    v = psi.vector
    return DensityMatrix.from_matrix(psi.dims, np.outer(v, v.conj()))


def make_example_state(t: float) -> DensityMatrix:
    """Benchmark noise family on dims (2, 2, 4).

    Returns ``(1 - t)/16 * I_16 + t |phi><phi|`` with
    ``|phi> = (|000> + |003> + |110> + |113>) / 2``, a maximally entangled
    pair between the first two qubits tensored with a pure level-doublet on
    the third subsystem, mixed with white noise.

    Parameters
    ----------
    t : float
        Mixing weight of the entangled projector, in [0, 1].

    Returns
    -------
    DensityMatrix
        Trace-1 PSD state on dims (2, 2, 4).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t = {t} outside [0, 1]")
    dims = TripartiteDims(2, 2, 4)
    phi = example_feature_state().vector
    mat = (1.0 - t) / 16.0 * np.eye(16) + t * np.outer(phi, phi.conj())
    return DensityMatrix.from_matrix(dims, mat)


def example_feature_state() -> PureState:
    """The pure (2, 2, 4) state |phi> entering :func:`make_example_state`."""
    dims = TripartiteDims(2, 2, 4)
    coeffs = np.zeros((2, 2, 4), dtype=complex)
    for ijk in [(0, 0, 0), (0, 0, 3), (1, 1, 0), (1, 1, 3)]:
        coeffs[ijk] = 0.5
    return PureState(dims, coeffs)


def make_named(name: str, dims: TripartiteDims):
    """Standard fixture states: 'GHZ', 'W', 'product', 'max-mixed'.

    GHZ and W require equal local dimensions (W additionally qubits);
    'product' is the basis state |000>; 'max-mixed' returns a DensityMatrix,
    the rest return PureStates.
    """
    key = name.strip().lower()
    m, n, l = dims
    if key == "ghz":
        if not m == n == l:
            raise ValueError(f"GHZ requires equal dimensions, got {dims.as_tuple()}")
        coeffs = np.zeros(dims.as_tuple(), dtype=complex)
        for i in range(m):
            coeffs[i, i, i] = 1.0 / np.sqrt(m)
        return PureState(dims, coeffs)
    if key == "w":
        if not (m == n == l == 2):
            raise ValueError(f"W is defined here for qubits only, got {dims.as_tuple()}")
        coeffs = np.zeros((2, 2, 2), dtype=complex)
        for ijk in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
            coeffs[ijk] = 1.0 / np.sqrt(3)
        return PureState(dims, coeffs)
    if key == "product":
        coeffs = np.zeros(dims.as_tuple(), dtype=complex)
        coeffs[0, 0, 0] = 1.0
        return PureState(dims, coeffs)
    if key in ("max-mixed", "maxmixed"):
        d = dims.total
        return DensityMatrix.from_matrix(dims, np.eye(d) / d)
    raise ValueError(f"unknown named state {name!r}")


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed isometry U (rows x cols, U†U = I), rows >= cols."""
    if rows < cols:
        raise ValueError(f"isometry needs rows >= cols, got {rows} x {cols}")
    g = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure(dims: TripartiteDims, seed: int) -> PureState:
    """Haar-random normalized pure state, deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(dims.as_tuple()) + 1j * rng.standard_normal(dims.as_tuple())
    coeffs /= np.linalg.norm(coeffs)
    return PureState(dims, coeffs)


def random_mixed(dims: TripartiteDims, rank: int, seed: int) -> DensityMatrix:
    """Random rank-limited mixed state: normalized Wishart matrix A A†."""
    d = dims.total
    if not 1 <= rank <= d:
        raise ValueError(f"rank {rank} outside [1, {d}]")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    mat = a @ a.conj().T
    return DensityMatrix.from_matrix(dims, mat / np.trace(mat).real)


def random_product_density(dims: TripartiteDims, seed: int) -> DensityMatrix:
    """Tensor product of independent random single-subsystem mixed states."""
    rng = np.random.default_rng(seed)
    factors = []
    for d in dims:
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        f = a @ a.conj().T
        factors.append(f / np.trace(f).real)
    mat = np.kron(np.kron(factors[0], factors[1]), factors[2])
    return DensityMatrix.from_matrix(dims, mat)


def basis_state(dims: TripartiteDims, idx: tuple[int, int, int]) -> PureState:
    """Computational basis ket |ijk>."""
    coeffs = np.zeros(dims.as_tuple(), dtype=complex)
    flatten_index(idx, dims.as_tuple())  # bounds check
    coeffs[idx] = 1.0
    return PureState(dims, coeffs)
