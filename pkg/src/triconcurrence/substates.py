"""Enumeration of kept-level selectors and the combinatorial coefficients
weighting substate sums in the bound family."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator

from .states import TripartiteDims


@dataclass(frozen=True)
class SubspaceSelector:
    """Kept basis levels per subsystem, each a strictly sorted non-empty tuple."""

    keep1: tuple[int, ...]
    keep2: tuple[int, ...]
    keep3: tuple[int, ...]

    def __post_init__(self):
        for name, keep in (("keep1", self.keep1), ("keep2", self.keep2), ("keep3", self.keep3)):
            keep = tuple(int(i) for i in keep)
            if len(keep) == 0:
                raise ValueError(f"{name} is empty")
            if any(i < 0 for i in keep):
                raise ValueError(f"{name} contains negative indices: {keep}")
            if any(b <= a for a, b in zip(keep, keep[1:])):
                raise ValueError(f"{name} must be strictly increasing: {keep}")
            object.__setattr__(self, name, keep)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.keep1), len(self.keep2), len(self.keep3))

    @property
    def keeps(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.keep1, self.keep2, self.keep3)

    def within(self, dims: TripartiteDims) -> bool:
        return all(keep[-1] < d for keep, d in zip(self.keeps, dims))


def full_selector(dims: TripartiteDims) -> SubspaceSelector:
    """Selector keeping every level of every subsystem."""
    m, n, l = dims
    return SubspaceSelector(tuple(range(m)), tuple(range(n)), tuple(range(l)))


def count_selectors(dims: TripartiteDims, shape: tuple[int, int, int]) -> int:
    """Number of selectors of the given shape: product of binomials."""
    _check_shape(dims, shape)
    return comb(dims.m, shape[0]) * comb(dims.n, shape[1]) * comb(dims.l, shape[2])


def enumerate_selectors(dims: TripartiteDims, shape: tuple[int, int, int]) -> Iterator[SubspaceSelector]:
    """Yield all selectors of the given shape in lexicographic order.

    Lazy: selector tuples are produced one at a time so large binomial
    products never materialize at once.
    """
    _check_shape(dims, shape)
    s1, s2, s3 = shape
    for k1 in itertools.combinations(range(dims.m), s1):
        for k2 in itertools.combinations(range(dims.n), s2):
            for k3 in itertools.combinations(range(dims.l), s3):
                yield SubspaceSelector(k1, k2, k3)


def _check_shape(dims: TripartiteDims, shape: tuple[int, int, int]) -> None:
    if len(shape) != 3:
        raise ValueError(f"shape must be a triple, got {shape}")
    for s, d in zip(shape, dims):
        if not 1 <= s <= d:
            raise ValueError(f"shape {tuple(shape)} exceeds dims {dims.as_tuple()}")


@dataclass(frozen=True)
class BoundCoefficient:
    """Exact rational prefactor of a substate sum."""

    value: Fraction
    shape: tuple[int, int, int]
    source_dims: tuple[int, int, int]

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"coefficient must be positive, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)


def coefficient_sss(dims: TripartiteDims, s: int) -> BoundCoefficient:
    """Coefficient of the equal-shape (s, s, s) substate sum.

    Equals the reciprocal of the worst-case number of substates any single
    coefficient-difference term can appear in. Subsystems are relabeled into
    non-decreasing dimension order before applying the formula, which is
    asymmetric in the roles.
    """
    m, n, l = dims.sorted()
    if not 2 <= s <= m:
        raise ValueError(f"substate size s = {s} outside [2, {m}] for dims {dims.as_tuple()}")
    denom = comb(m - 2, s - 2) * comb(n - 2, s - 2) * comb(l - 1, s - 1)
    return BoundCoefficient(Fraction(1, denom), (s, s, s), dims.as_tuple())


def coefficient_lmn(s: int, shape: tuple[int, int, int]) -> BoundCoefficient:
    """Coefficient of the (lam, mu, nu) substate sum for an (s, s, s) state,
    requiring 1 < lam <= mu <= nu <= s."""
    lam, mu, nu = shape
    if not (1 < lam <= mu <= nu <= s):
        raise ValueError(f"shape {tuple(shape)} violates 1 < lam <= mu <= nu <= s = {s}")
    denom = comb(s - 1, lam - 1) * comb(s - 2, mu - 2) * comb(s - 2, nu - 2)
    return BoundCoefficient(Fraction(1, denom), (lam, mu, nu), (s, s, s))
