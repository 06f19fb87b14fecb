"""Structure maps on tripartite states: partial trace, partial transpose,
bipartite realignment, and kept-level projection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import flatten_index
from .states import DensityMatrix, PureState, TripartiteDims
from .substates import SubspaceSelector

SUBSYSTEMS = (0, 1, 2)


def _check_subsystem(j: int) -> int:
    if j not in SUBSYSTEMS:
        raise ValueError(f"subsystem label must be 0, 1 or 2, got {j!r}")
    return j


@dataclass(frozen=True)
class Bipartition:
    """One subsystem against the other two, in canonical order."""

    solo: int

    def __post_init__(self):
        _check_subsystem(self.solo)

    @property
    def rest(self) -> tuple[int, int]:
        return tuple(a for a in SUBSYSTEMS if a != self.solo)


def _as_six_index(rho: DensityMatrix) -> np.ndarray:
    d = rho.dims.as_tuple()
    return rho.mat.reshape(d + d)


def partial_trace(rho: DensityMatrix, keep: int) -> np.ndarray:
    """Reduced matrix on the kept subsystem; trace-preserving, Hermitian, PSD."""
    keep = _check_subsystem(keep)
    t = _as_six_index(rho)
    traced = [a for a in SUBSYSTEMS if a != keep]
    # trace out the higher axis pair first so earlier axis numbers stay valid
    for a in sorted(traced, reverse=True):
        t = np.trace(t, axis1=a, axis2=a + t.ndim // 2)
    return t


def purity_deficits(psi: PureState) -> tuple[float, float, float]:
    """The three quantities 1 - Tr(rho_j^2) of the single-subsystem reductions.

    Computed via partial traces of the rank-1 projector; each value lies in
    [0, 1 - 1/d_j] and vanishes exactly when the state is product across the
    corresponding cut.
    """
    from .states import pure_to_density

    rho = pure_to_density(psi)
    out = []
    for j in SUBSYSTEMS:
        red = partial_trace(rho, j)
        out.append(1.0 - float(np.trace(red @ red).real))
    return tuple(out)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose the row/column indices of one subsystem; an exact index swap."""
    j = _check_subsystem(subsystem)
    t = _as_six_index(rho)
    d = rho.dims.total
    return np.swapaxes(t, j, j + 3).reshape(d, d)


def realign(rho: DensityMatrix, part: Bipartition | int) -> np.ndarray:
    """Reshuffle across the solo-vs-rest bipartition.

    After reordering subsystems so the solo one comes first, the output
    R has shape (d_solo^2, d_rest^2) with
    ``R[(a, a'), (b, b')] = rho[(a, b), (a', b')]``. Applying the same
    re-pairing to R recovers the reordered input.
    """
    if isinstance(part, int):
        part = Bipartition(part)
    dims = rho.dims.as_tuple()
    order = (part.solo,) + part.rest
    perm = order + tuple(o + 3 for o in order)
    t = _as_six_index(rho).transpose(perm)
    ds = dims[part.solo]
    dr = dims[part.rest[0]] * dims[part.rest[1]]
    four = t.reshape(ds, dr, ds, dr)
    return four.transpose(0, 2, 1, 3).reshape(ds * ds, dr * dr)


def project_substate(rho: DensityMatrix, sel: SubspaceSelector) -> DensityMatrix:
    """Extract the substate on the kept levels, in lexicographic (i, j, k) order.

    The result lives on dims equal to the selector shape, is PSD, and carries
    trace at most that of the input (possibly zero).
    """
    dims = rho.dims.as_tuple()
    if not sel.within(rho.dims):
        raise ValueError(f"selector {sel.keeps} exceeds dims {dims}")
    idx = [
        flatten_index((i, j, k), dims)
        for i in sel.keep1
        for j in sel.keep2
        for k in sel.keep3
    ]
    sub = rho.mat[np.ix_(idx, idx)]
    s1, s2, s3 = sel.shape
    return DensityMatrix.from_matrix(TripartiteDims(s1, s2, s3), sub)
