"""Configurations ``A`` and parameter vectors ``alpha``.

A configuration is a finite list of integer vectors ``a_1..a_N`` in ``Z^r``
that spans ``Z^r`` as a group and lies on an affine hyperplane ``h = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NoGradingForm, SpanDeficient
from .lattice import (
    FundamentalBlock,
    common_denominator,
    dot,
    hnf,
    int_matrix,
    int_vector,
    rat_vector,
    solve_rational,
    transpose,
    vecmat,
)


@dataclass(frozen=True)
class AConfiguration:
    """A validated configuration.

    ``A`` holds the generators as rows, ``h`` the grading form with
    ``h . a_i = 1`` and ``L_basis`` a Hermite-reduced basis of the relation
    lattice ``{l in Z^N : sum l_i a_i = 0}``.
    """

    r: int
    N: int
    A: tuple
    h: tuple
    L_basis: tuple
    _lift: tuple = field(repr=False, compare=False)

    def lift(self, beta: Sequence[int]) -> tuple:
        """An integer vector ``l`` with ``psi(l) = beta``."""
        return vecmat(int_vector(beta), self._lift)

    def degree(self, x: Sequence) -> Fraction:
        return Fraction(dot(self.h, x))

    @cached_property
    def columns(self) -> tuple:
        """The ``r x N`` matrix whose columns are the generators."""
        return transpose(self.A)

    @cached_property
    def facets(self):
        from .cone import facets

        return facets(self)

    @cached_property
    def triangulation(self):
        from .cone import triangulate

        return triangulate(self)


@dataclass(frozen=True)
class ParameterVector:
    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", rat_vector(self.alpha))

    @classmethod
    def of(cls, values: Iterable) -> "ParameterVector":
        return cls(tuple(values))

    @property
    def D(self) -> int:
        return common_denominator(self.alpha)

    @property
    def r(self) -> int:
        return len(self.alpha)

    def scaled(self, k) -> "ParameterVector":
        return ParameterVector(tuple(k * x for x in self.alpha))

    def shifted(self, z: Sequence[int]) -> "ParameterVector":
        return ParameterVector(tuple(x + zi for x, zi in zip(self.alpha, z)))

    def numerators(self) -> tuple:
        d = self.D
        return tuple(int(x * d) for x in self.alpha)


def build_configuration(vectors: Sequence[Sequence[int]]) -> AConfiguration:
    if not vectors:
        raise ValueError("a configuration needs at least one vector")
    rows = int_matrix(vectors)
    n, r = len(rows), len(rows[0])
    if r == 0:
        raise ValueError("vectors must have positive dimension")
    res = hnf(rows)
    # Z-span equals Z^r iff the Hermite form is the identity on top; equivalently
    # every elementary divisor of the r x N matrix equals 1.
    if res.rank < r or any(res.H[i][i] != 1 for i in range(r)):
        raise SpanDeficient(f"generators span a proper sublattice of Z^{r}")
    h = solve_rational(rows, [1] * n)
    if h is None:
        raise NoGradingForm("no linear form h with h(a_i) = 1 for all i")
    kernel = res.U[r:]
    L_basis = hnf(kernel).H if kernel else ()
    return AConfiguration(r=r, N=n, A=rows, h=h, L_basis=L_basis, _lift=res.U[:r])


def psi(cfg: AConfiguration, m: Sequence) -> tuple:
    """``sum_i m_i a_i``."""
    if len(m) != cfg.N:
        raise ValueError(f"expected a vector of length {cfg.N}")
    return vecmat(m, cfg.A)


def gamma_lift(cfg: AConfiguration, alpha: ParameterVector) -> tuple:
    """A rational ``gamma`` with ``psi(gamma) = alpha``; free coordinates are zero."""
    gamma = solve_rational(cfg.columns, alpha.alpha)
    assert gamma is not None, "psi is onto Q^r for a spanning configuration"
    return gamma


class Semigroup:
    """Membership in ``Z_{>=0} A`` via the grading: ``sum c_i = h(x)``."""

    def __init__(self, cfg: AConfiguration):
        self.cfg = cfg
        self._layers = [{(0,) * cfg.r}]

    def layer(self, d: int) -> set:
        while len(self._layers) <= d:
            prev = self._layers[-1]
            self._layers.append(
                {tuple(x + y for x, y in zip(p, a)) for p in prev for a in self.cfg.A}
            )
        return self._layers[d]

    def __contains__(self, x) -> bool:
        d = self.cfg.degree(x)
        if d.denominator != 1 or d < 0:
            return False
        return tuple(x) in self.layer(int(d))


def check_saturation(cfg: AConfiguration, tri=None) -> bool:
    """Whether ``C(A) cap Z^r`` equals ``Z_{>=0} A``.

    Every lattice point of the cone is a non-negative integer combination of
    the generators of one simplex of ``tri`` plus a lattice point of that
    simplex's half-open parallelepiped, so testing the parallelepiped points
    suffices.
    """
    tri = tri if tri is not None else cfg.triangulation
    semigroup = Semigroup(cfg)
    zero = (0,) * cfg.r
    for simplex in tri.simplices:
        block = FundamentalBlock([cfg.A[i] for i in simplex])
        for p in block.scaled_points(zero, 1):
            if p not in semigroup:
                return False
    return True
