"""Facets, faces and triangulations of the cone ``C(A)``.

Facet normals are primitive integer vectors oriented inward (``phi >= 0`` on
the cone).  They are the extreme rays of the dual cone
``{phi : phi . a_i >= 0}``, computed by double description starting from a
simplicial cone on ``r`` independent generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .asystem import AConfiguration, ParameterVector
from .errors import DegenerateCone
from .lattice import (
    FundamentalBlock,
    LatticeReducer,
    adjugate,
    det,
    dot,
    identity,
    integer_kernel,
    matvec,
    primitive,
    rank,
    transpose,
)


@dataclass(frozen=True)
class Face:
    """A proper face, given by the generators it contains."""

    generators: frozenset
    annihilator: tuple  # integer rows spanning the forms vanishing on the face

    @cached_property
    def _reducer(self) -> LatticeReducer:
        # alpha + Z^r meets span(face) iff P alpha lies in P Z^r, P = annihilator
        return LatticeReducer(transpose(self.annihilator), len(self.annihilator))

    def meets_scaled(self, num: Sequence[int], den: int) -> bool:
        return self._reducer.contains_scaled(matvec(self.annihilator, num), den)


@dataclass(frozen=True)
class FacetSystem:
    normals: tuple
    incidence: tuple  # per facet, the generator indices on it
    generators: tuple = field(default=(), repr=False, compare=False)

    def contains(self, p: Sequence) -> bool:
        return all(dot(phi, p) >= 0 for phi in self.normals)

    @cached_property
    def faces(self) -> tuple:
        """All proper faces, from facets down to the origin (empty generator set)."""
        found = set(self.incidence)
        frontier = set(found)
        while frontier:
            new = set()
            for f in frontier:
                for g in self.incidence:
                    x = f & g
                    if x not in found:
                        new.add(x)
            found |= new
            frontier = new
        found.add(frozenset())
        r = len(self.normals[0])
        out = []
        for gens in sorted(found, key=lambda s: (-len(s), sorted(s))):
            out.append(Face(gens, _annihilator(self.generators, gens, r)))
        return tuple(out)


def _annihilator(gens, face: frozenset, r: int) -> tuple:
    if not face:
        return identity(r)
    return integer_kernel([gens[i] for i in sorted(face)])


def _dual_extreme_rays(gens: Sequence[Sequence[int]]) -> list:
    r = len(gens[0])
    basis = []
    for i, g in enumerate(gens):
        if rank([gens[j] for j in basis] + [g]) > len(basis):
            basis.append(i)
        if len(basis) == r:
            break
    if len(basis) < r:
        raise DegenerateCone("generators do not span R^r")
    adj, d = adjugate([gens[i] for i in basis])
    sign = 1 if d > 0 else -1
    # column j of adj pairs to |d| with basis[j] and to 0 with the others
    rays = [primitive([sign * adj[k][j] for k in range(r)]) for j in range(r)]
    processed = list(basis)

    for i, a in enumerate(gens):
        if i in basis:
            continue
        vals = [dot(ray, a) for ray in rays]
        if all(v >= 0 for v in vals):
            processed.append(i)
            continue
        tight = [frozenset(j for j in processed if dot(ray, gens[j]) == 0) for ray in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new = []
        for p in pos:
            for n in neg:
                common = tight[p] & tight[n]
                if len(common) < r - 2:
                    continue
                if any(common <= tight[w] for w in range(len(rays)) if w not in (p, n)):
                    continue
                combo = [vals[p] * x - vals[n] * y for x, y in zip(rays[n], rays[p])]
                new.append(primitive(combo))
        rays = [rays[k] for k, v in enumerate(vals) if v >= 0] + new
        processed.append(i)
    return sorted(set(rays), reverse=True)


def facets(cfg: AConfiguration) -> FacetSystem:
    normals = tuple(_dual_extreme_rays(cfg.A))
    incidence = tuple(
        frozenset(i for i, a in enumerate(cfg.A) if dot(phi, a) == 0) for phi in normals
    )
    return FacetSystem(normals, incidence, cfg.A)


def cone_contains(fs: FacetSystem, p: Sequence) -> bool:
    if len(p) != len(fs.normals[0]):
        raise ValueError("dimension mismatch")
    return fs.contains(p)


def face_meets_shifted_lattice(
    cfg: AConfiguration, fs: FacetSystem, face, alpha: ParameterVector
) -> bool:
    """Whether ``alpha + Z^r`` has a point on the given face.

    ``face`` is a :class:`Face` or a collection of generator indices.  The
    face is full-dimensional in its linear span S and contains points
    arbitrarily deep inside S, so the shifted lattice meets the face iff it
    meets S, i.e. iff ``P alpha`` lies in ``P Z^r`` for an integer matrix
    ``P`` whose rows cut out S.
    """
    if not isinstance(face, Face):
        gens = frozenset(face)
        face = Face(gens, _annihilator(cfg.A, gens, cfg.r))
    return face.meets_scaled(alpha.numerators(), alpha.D)


def is_irreducible(cfg: AConfiguration, fs: FacetSystem, alpha: ParameterVector) -> bool:
    num, den = alpha.numerators(), alpha.D
    return not any(face.meets_scaled(num, den) for face in fs.faces)


@dataclass(frozen=True)
class Triangulation:
    simplices: tuple  # r-element index tuples into A
    dets: tuple  # |det| per simplex

    @property
    def total(self) -> int:
        return sum(self.dets)


def triangulate(cfg: AConfiguration) -> Triangulation:
    """Placing triangulation of Q(A) in input order.

    The first ``r`` linearly independent generators form the initial simplex;
    each later generator is joined to every boundary facet it sees strictly
    from outside.  Generators already in the current cone are skipped.
    """
    gens = cfg.A
    r = cfg.r
    start = []
    for i, g in enumerate(gens):
        if rank([gens[j] for j in start] + [g]) > len(start):
            start.append(i)
        if len(start) == r:
            break
    if len(start) < r:
        raise DegenerateCone("generators do not span R^r")
    simplices = [tuple(start)]

    def facet_normal(simplex, drop):
        face = [gens[j] for j in simplex if j != drop]
        normal = integer_kernel(face, ncols=r)[0]
        return normal if dot(normal, gens[drop]) > 0 else tuple(-x for x in normal)

    for i, a in enumerate(gens):
        if i in start:
            continue
        owners = {}
        for s in simplices:
            for drop in s:
                key = frozenset(s) - {drop}
                owners.setdefault(key, []).append((s, drop))
        added = []
        for key, own in owners.items():
            if len(own) != 1:
                continue
            s, drop = own[0]
            if dot(facet_normal(s, drop), a) < 0:
                added.append(tuple(sorted(key | {i})))
        simplices.extend(added)

    dets = tuple(abs(det([gens[j] for j in s])) for s in simplices)
    return Triangulation(tuple(simplices), dets)


def normalized_volume(cfg: AConfiguration) -> int:
    return triangulate(cfg).total


def blocks(cfg: AConfiguration, tri: Triangulation) -> list:
    return [FundamentalBlock([cfg.A[j] for j in s]) for s in tri.simplices]
