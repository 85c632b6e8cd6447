"""Polynomial solutions of the A-hypergeometric system modulo a prime.

For integral ``alpha`` and a prime ``p``, each apex point ``beta/p`` of
``(alpha/p + Z^r) cap C(A)`` gives the polynomial

    Psi = sum over l >= 0 with psi(l) = beta of v^l / l!

whose exponents all lie in the cube ``[0, p)^N``, so it reduces mod p.
The number of such polynomials is the rank of the mod-p solution module
over ``F_p[v^p]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .apex import ApexSearch
from .asystem import AConfiguration, ParameterVector, check_saturation
from .cone import FacetSystem, Triangulation
from .errors import EmptyFiber, NotSaturated, PrimeTooSmall
from .lattice import dot, hnf, int_vector


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int):
    if not is_prime(p):
        raise PrimeTooSmall(f"{p} is not a prime")


@dataclass(frozen=True)
class PrimeFieldPoly:
    """A polynomial over F_p stored as ``{exponent tuple: residue}``; zeros are dropped."""

    p: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.coeffs.items():
            c %= self.p
            if c:
                clean[tuple(m)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeFieldPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __add__(self, other: "PrimeFieldPoly") -> "PrimeFieldPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return PrimeFieldPoly(self.p, out)

    def scale(self, c: int) -> "PrimeFieldPoly":
        return PrimeFieldPoly(self.p, {m: c * x for m, x in self.coeffs.items()})

    def shift(self, exps: Sequence[int]) -> "PrimeFieldPoly":
        """Multiply by the monomial ``v^exps``."""
        return PrimeFieldPoly(
            self.p, {tuple(a + b for a, b in zip(m, exps)): c for m, c in self.coeffs.items()}
        )

    @property
    def support(self) -> tuple:
        return tuple(self.coeffs)

    def terms(self) -> list:
        return list(self.coeffs.items())


@dataclass(frozen=True)
class GammaSet:
    beta: tuple
    p: int
    points: tuple


def falling(x, k: int):
    """``x (x-1) ... (x-k+1)``."""
    out = 1
    for j in range(k):
        out *= x - j
    return out


def apexes_over_p(
    cfg: AConfiguration, fs: FacetSystem, tri: Triangulation, alpha: Sequence[int], p: int
) -> list:
    """The vectors ``beta = p * apex`` for the apex points of ``(alpha/p + Z^r) cap C(A)``."""
    _require_prime(p)
    alpha = int_vector(alpha)
    betas = ApexSearch(cfg, fs, tri).scaled_apexes(alpha, p)
    for beta in betas:
        assert all((b - a) % p == 0 for a, b in zip(alpha, beta))
    return betas


def gamma_set(cfg: AConfiguration, beta: Sequence[int], p: int) -> GammaSet:
    """All ``l`` in ``[0, p)^N`` with ``psi(l) = beta``.

    ``l = l0 + sum t_j L_j`` with the relation basis in Hermite form; the
    pivot column of each basis row bounds its coefficient once the earlier
    coefficients are fixed.
    """
    beta = int_vector(beta)
    l0 = cfg.lift(beta)
    basis = cfg.L_basis
    pivots = hnf(basis).pivots if basis else ()
    found = []

    def walk(j, current):
        if j == len(basis):
            if all(0 <= x < p for x in current):
                found.append(tuple(current))
            return
        row, col = basis[j], pivots[j]
        # row[col] > 0: need 0 <= current[col] + t row[col] < p
        lo = -(current[col] // row[col])
        hi = (p - 1 - current[col]) // row[col]
        for t in range(lo, hi + 1):
            walk(j + 1, [x + t * y for x, y in zip(current, row)])

    walk(0, list(l0))
    if not found:
        raise EmptyFiber(f"no point of [0,{p})^{cfg.N} maps to {beta}")
    return GammaSet(beta, p, tuple(sorted(found)))


def psi_polynomial(gs: GammaSet, p: Optional[int] = None) -> PrimeFieldPoly:
    p = gs.p if p is None else p
    coeffs = {}
    for l in gs.points:
        denom = 1
        for x in l:
            denom = denom * math.factorial(x) % p
        coeffs[l] = pow(denom, -1, p)
    return PrimeFieldPoly(p, coeffs)


def _split(relation):
    plus = tuple(max(x, 0) for x in relation)
    minus = tuple(max(-x, 0) for x in relation)
    return plus, minus


def apply_box(poly: PrimeFieldPoly, relation: Sequence[int]) -> PrimeFieldPoly:
    """``prod d_i^{l_i} - prod d_i^{-l_i}`` over positive / negative parts of ``l``."""
    plus, minus = _split(relation)
    out = {}
    for part, sign in ((plus, 1), (minus, -1)):
        for m, c in poly.coeffs.items():
            f = 1
            for mi, k in zip(m, part):
                f *= falling(mi, k)
            if f % poly.p:
                key = tuple(a - b for a, b in zip(m, part))
                out[key] = out.get(key, 0) + sign * f * c
    return PrimeFieldPoly(poly.p, out)


def apply_euler(cfg: AConfiguration, alpha: Sequence[int], poly: PrimeFieldPoly) -> list:
    """Residuals of ``sum_k a_{k,i} v_k d_k - alpha_i`` for each coordinate ``i``."""
    out = []
    for i in range(cfg.r):
        res = {}
        for m, c in poly.coeffs.items():
            w = sum(a[i] * mk for a, mk in zip(cfg.A, m)) - alpha[i]
            res[m] = w * c
        out.append(PrimeFieldPoly(poly.p, res))
    return out


@dataclass(frozen=True)
class ModpResidual:
    box: dict  # relation -> residual polynomial
    euler: tuple

    @property
    def zero(self) -> bool:
        return not any(self.box.values()) and not any(self.euler)


def apply_operators_modp(
    cfg: AConfiguration,
    alpha: Sequence[int],
    poly: PrimeFieldPoly,
    relations: Optional[Sequence[Sequence[int]]] = None,
) -> ModpResidual:
    relations = cfg.L_basis if relations is None else relations
    box = {tuple(l): apply_box(poly, l) for l in relations}
    return ModpResidual(box, tuple(apply_euler(cfg, int_vector(alpha), poly)))


def recursion_holds(poly: PrimeFieldPoly, relation: Sequence[int]) -> bool:
    """``[m]_{l+} c_m == [m-l]_{l-} c_{m-l}`` mod p for every exponent ``m``."""
    plus, minus = _split(relation)
    l = tuple(relation)
    candidates = set(poly.coeffs) | {tuple(a + b for a, b in zip(m, l)) for m in poly.coeffs}
    for m in candidates:
        lhs = poly.coeffs.get(m, 0)
        for mi, k in zip(m, plus):
            lhs *= falling(mi, k)
        prev = tuple(a - b for a, b in zip(m, l))
        rhs = poly.coeffs.get(prev, 0)
        for mi, k in zip(prev, minus):
            rhs *= falling(mi, k)
        if (lhs - rhs) % poly.p:
            return False
    return True


def rho_for(D: int, p: int) -> int:
    """Least positive residue of ``-p^{-1}`` mod D (1 when D = 1)."""
    if D == 1:
        return 1
    return (-pow(p, -1, D)) % D


def facet_margin(fs: FacetSystem, shift: ParameterVector) -> list:
    """Per facet, the distance from ``phi(shift + Z^r)`` to 0.

    Facet normals are primitive, so ``phi(shift + Z^r) = phi(shift) + Z``.
    """
    out = []
    for phi in fs.normals:
        x = Fraction(dot(phi, shift.alpha))
        frac = x - math.floor(x)
        out.append(min(frac, 1 - frac))
    return out


@dataclass(frozen=True)
class ModpWitness:
    alpha: ParameterVector
    p: int
    rho: int
    lift: tuple  # the integral parameter (1 + p rho) alpha
    betas: tuple
    gamma_sets: tuple
    polys: tuple
    signature_rho: int

    @property
    def rank(self) -> int:
        return len(self.betas)


def check_prime(cfg: AConfiguration, fs: FacetSystem, alpha: ParameterVector, p: int) -> int:
    """Validate ``p`` for the parameter ``alpha`` and return ``rho``.

    Shifting ``rho alpha + Z^r`` by ``alpha/p`` lands on ``lift/p + Z^r``.
    The shift preserves every facet sign (hence cone membership and apex
    points) as soon as ``|phi(alpha)| / p`` is below the facet margin of
    ``rho alpha`` for each facet ``phi``.
    """
    _require_prime(p)
    D = alpha.D
    if D % p == 0:
        raise PrimeTooSmall(f"p={p} divides the denominator D={D}")
    rho = rho_for(D, p)
    margins = facet_margin(fs, alpha.scaled(rho))
    for phi, delta in zip(fs.normals, margins):
        reach = abs(Fraction(dot(phi, alpha.alpha)))
        if delta == 0 or p * delta <= reach:
            raise PrimeTooSmall(
                f"p={p} too small: facet {phi} needs p > {reach / delta if delta else 'inf'}"
            )
    return rho


def modp_witness(
    cfg: AConfiguration,
    alpha: ParameterVector,
    p: int,
    search: Optional[ApexSearch] = None,
) -> ModpWitness:
    if not check_saturation(cfg):
        raise NotSaturated("mod-p solutions need a saturated configuration")
    search = search or ApexSearch(cfg)
    rho = check_prime(cfg, search.fs, alpha, p)
    lift = tuple(int(x * (1 + p * rho)) for x in alpha.alpha)
    betas = tuple(apexes_over_p(cfg, search.fs, search.tri, lift, p))
    gsets = tuple(gamma_set(cfg, b, p) for b in betas)
    polys = tuple(psi_polynomial(g) for g in gsets)
    sig = search.signature(alpha.scaled(rho))
    assert len(betas) == sig, "mod-p rank differs from the signature of rho*alpha"
    return ModpWitness(alpha, p, rho, lift, betas, gsets, polys, sig)


def modp_rank(cfg: AConfiguration, alpha: ParameterVector, p: int) -> int:
    return modp_witness(cfg, alpha, p).rank
