"""Apex points, signatures and the conjugate-parameter algebraicity test.

A point ``p`` of ``K = (alpha + Z^r) cap C(A)`` is an apex point when no
other point ``q`` of ``K`` has ``p in q + C(A)``; equivalently ``p`` lies in
the cone while no ``p - a_i`` does.  Every apex point sits in the half-open
fundamental block of some simplex of a triangulation, which makes the
search finite: each block holds exactly ``|det|`` points of the shifted
lattice.

Internally points are handled as integer numerators over the common
denominator ``D`` of ``alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .asystem import AConfiguration, ParameterVector
from .cone import FacetSystem, Triangulation, blocks, is_irreducible
from .lattice import dot


@dataclass(frozen=True)
class ApexReport:
    alpha: ParameterVector
    apex_points: tuple
    volume: int

    @property
    def signature(self) -> int:
        return len(self.apex_points)

    @property
    def maximal(self) -> bool:
        return self.signature == self.volume


@dataclass(frozen=True)
class AlgebraicityVerdict:
    alpha: ParameterVector
    irreducible: bool
    per_k: dict = field(default_factory=dict)
    complete: bool = True  # False when the sweep was restricted to chosen k

    @property
    def algebraic(self) -> Optional[bool]:
        if not self.irreducible:
            return False
        if not self.complete:
            return None
        return all(rep.maximal for rep in self.per_k.values())

    @property
    def signatures(self) -> dict:
        return {k: rep.signature for k, rep in self.per_k.items()}


class ApexSearch:
    """Apex enumeration for one configuration, reused across parameters."""

    def __init__(self, cfg: AConfiguration, fs: FacetSystem = None, tri: Triangulation = None):
        self.cfg = cfg
        self.fs = fs if fs is not None else cfg.facets
        self.tri = tri if tri is not None else cfg.triangulation
        self.blocks = blocks(cfg, self.tri)
        self.volume = self.tri.total
        # phi_j(a_i), used to test p - a_i against every facet at once
        self.phi_a = [[dot(phi, a) for a in cfg.A] for phi in self.fs.normals]

    def is_apex_scaled(self, num, den: int) -> bool:
        vals = [dot(phi, num) for phi in self.fs.normals]
        if any(v < 0 for v in vals):
            return False
        for i in range(self.cfg.N):
            if all(v >= den * row[i] for v, row in zip(vals, self.phi_a)):
                return False
        return True

    def scaled_apexes(self, num, den: int) -> list:
        found = set()
        for block in self.blocks:
            for p in block.scaled_points(num, den):
                if p not in found and self.is_apex_scaled(p, den):
                    found.add(p)
        return sorted(found)

    def apex_points(self, alpha: ParameterVector) -> ApexReport:
        den = alpha.D
        pts = self.scaled_apexes(alpha.numerators(), den)
        return ApexReport(
            alpha,
            tuple(tuple(Fraction(x, den) for x in p) for p in pts),
            self.volume,
        )

    def signature(self, alpha: ParameterVector) -> int:
        return len(self.scaled_apexes(alpha.numerators(), alpha.D))


def conjugates(D: int) -> list:
    """The ``k`` with ``1 <= k < D`` coprime to ``D``; ``[1]`` when ``D == 1``."""
    if D == 1:
        return [1]
    return [k for k in range(1, D) if math.gcd(k, D) == 1]


def apex_points(
    cfg: AConfiguration, fs: FacetSystem, tri: Triangulation, alpha: ParameterVector
) -> ApexReport:
    return ApexSearch(cfg, fs, tri).apex_points(alpha)


def signature(cfg: AConfiguration, alpha: ParameterVector) -> int:
    return ApexSearch(cfg).signature(alpha)


def decide_algebraic(
    cfg: AConfiguration,
    alpha: ParameterVector,
    ks: Optional[Iterable[int]] = None,
    search: Optional[ApexSearch] = None,
) -> AlgebraicityVerdict:
    """Irreducibility followed by the sweep over ``k alpha`` for ``k`` coprime to D.

    With ``ks`` the sweep is restricted to those multipliers and the
    verdict's ``algebraic`` is left undecided unless the system is reducible.
    """
    search = search or ApexSearch(cfg)
    if not is_irreducible(cfg, search.fs, alpha):
        return AlgebraicityVerdict(alpha, irreducible=False)
    D = alpha.D
    # integral alpha meets the origin face, so it never reaches this point
    assert D > 1
    full = conjugates(D)
    if ks is None:
        chosen, complete = full, True
    else:
        chosen = sorted(set(ks))
        bad = [k for k in chosen if k not in full]
        if bad:
            raise ValueError(f"multipliers {bad} are not coprime to D={D} in [1, D)")
        complete = chosen == full
    per_k = {k: search.apex_points(alpha.scaled(k)) for k in chosen}
    return AlgebraicityVerdict(alpha, True, per_k, complete)
