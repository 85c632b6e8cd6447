"""Truncated multivariate power series over Q and the formal solution Phi.

Series are truncated by total degree; binary operations keep the smaller
of the two truncation orders.  Gamma-function quotients are handled as
Pochhammer products, so every coefficient is an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Mapping, Optional, Sequence

from .asystem import AConfiguration, psi
from .errors import NonConvergentDirection
from .lattice import det, inverse, matmul, rat_vector, vecmat


def _degree(m) -> int:
    return sum(m)


def monomials(nvars: int, order: int):
    """Exponent tuples of total degree <= order, by degree then lexicographically."""
    def rec(k, left):
        if k == 1:
            for e in range(left + 1):
                yield (e,)
            return
        for e in range(left + 1):
            for rest in rec(k - 1, left - e):
                yield (e,) + rest

    if nvars == 0:
        yield ()
        return
    for d in range(order + 1):
        for m in rec(nvars, d):
            if sum(m) == d:
                yield m


class TruncatedSeries:
    __slots__ = ("variables", "order", "coeffs")

    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping = None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.variables = tuple(variables)
        self.order = order
        n = len(self.variables)
        clean = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent {m}")
            c = Fraction(c)
            if c and _degree(m) <= order:
                clean[m] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, c, variables, order) -> "TruncatedSeries":
        return cls(variables, order, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, name, variables, order) -> "TruncatedSeries":
        exp = tuple(int(v == name) for v in variables)
        return cls(variables, order, {exp: 1})

    @classmethod
    def polynomial(cls, terms: Mapping, variables, order) -> "TruncatedSeries":
        return cls(variables, order, terms)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.variables}, order={self.order}, {len(self.coeffs)} terms)"

    def __getitem__(self, m) -> Fraction:
        return self.coeffs.get(tuple(m), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self[(0,) * len(self.variables)]

    def terms(self) -> list:
        return sorted(self.coeffs.items(), key=lambda kv: (_degree(kv[0]), kv[0]))

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, min(order, self.order), self.coeffs)

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.variables != self.variables:
                raise ValueError("series in different variables")
            return other
        return TruncatedSeries.constant(other, self.variables, self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return (
            self.variables == other.variables
            and self.truncate(order).coeffs == other.truncate(order).coeffs
        )

    def __add__(self, other) -> "TruncatedSeries":
        other = self._coerce(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.variables, min(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.order, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries(self.variables, self.order, {m: c * x for m, x in self.coeffs.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = {}
        for m1, c1 in self.coeffs.items():
            d1 = _degree(m1)
            for m2, c2 in other.coeffs.items():
                if d1 + _degree(m2) > order:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(self.variables, order, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def inverse(self) -> "TruncatedSeries":
        c = self.constant_term
        if not c:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        return (self * (1 / c)) ** -1 * (1 / c)

    def __pow__(self, q) -> "TruncatedSeries":
        q = Fraction(q)
        if q.denominator == 1 and q >= 0:
            result = TruncatedSeries.constant(1, self.variables, self.order)
            base, n = self, int(q)
            while n:
                if n & 1:
                    result = result * base
                base = base * base
                n >>= 1
            return result
        c = self.constant_term
        if c != 1:
            if q.denominator == 1 and c:
                return (self * (1 / c)) ** q * (c**q)
            raise ValueError("rational powers need constant term 1")
        # (1 + u)^q = sum_k binom(q, k) u^k, u without constant term
        u = self - 1
        result = TruncatedSeries.constant(1, self.variables, self.order)
        term = TruncatedSeries.constant(1, self.variables, self.order)
        binom = Fraction(1)
        for k in range(1, self.order + 1):
            term = term * u
            binom = binom * (q - k + 1) / k
            result = result + term * binom
        return result

    def sqrt(self) -> "TruncatedSeries":
        return self ** Fraction(1, 2)


def pochhammer(x, n: int) -> Fraction:
    """``Gamma(x+n)/Gamma(x)``; for negative ``n`` this is ``1/((x-1)...(x-|n|))``."""
    x = Fraction(x)
    out = Fraction(1)
    if n >= 0:
        for j in range(n):
            out *= x + j
        return out
    for j in range(1, -n + 1):
        out /= x - j
    return out


def reciprocal_gamma_ratio(g, n: int) -> Fraction:
    """``Gamma(g+1) / Gamma(g+n+1)``, finite whenever ``g`` is not a negative integer."""
    g = Fraction(g)
    out = Fraction(1)
    if n >= 0:
        for j in range(1, n + 1):
            out /= g + j
        return out
    for j in range(-n):
        out *= g - j
    return out


# -- formal solution --------------------------------------------------------


@dataclass(frozen=True)
class FormalSolutionSpec:
    cfg: AConfiguration
    gamma: tuple
    order: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", rat_vector(self.gamma))
        if len(self.gamma) != self.cfg.N:
            raise ValueError("gamma must have length N")

    @property
    def alpha(self) -> tuple:
        return psi(self.cfg, self.gamma)


@dataclass(frozen=True)
class PhiSeries:
    """``v^gamma * sum_t c_t z^t`` with ``z_j = v^{E_j}`` and ``l = t E``.

    ``coords`` are the positions where the relation basis ``E`` is the
    identity (and ``gamma`` vanishes), so ``t = l[coords]``.
    """

    gamma: tuple
    basis: tuple
    coords: tuple
    series: TruncatedSeries

    def exponent(self, t: Sequence[int]) -> tuple:
        if not self.basis:
            return (0,) * len(self.gamma)
        return vecmat(t, self.basis)


def adapted_basis(cfg: AConfiguration, gamma: Sequence) -> tuple:
    """A relation basis that is the identity on coordinates where ``gamma`` is 0."""
    n = cfg.N - cfg.r
    if n == 0:
        return (), ()
    zeros = [i for i, g in enumerate(gamma) if g == 0]
    for coords in combinations(zeros, n):
        sub = [[row[i] for i in coords] for row in cfg.L_basis]
        if abs(det(sub)) == 1:
            basis = matmul(inverse(sub), cfg.L_basis)
            return tuple(tuple(int(x) for x in row) for row in basis), coords
    raise NonConvergentDirection(
        "no coordinates with gamma_i = 0 carry a unimodular part of the relation lattice"
    )


def phi_coefficient(gamma: Sequence, l: Sequence[int]) -> Fraction:
    """Coefficient of ``v^(gamma+l)`` relative to the ``l = 0`` term."""
    out = Fraction(1)
    for g, li in zip(gamma, l):
        out *= reciprocal_gamma_ratio(g, li)
        if not out:
            break
    return out


def phi_series(spec: FormalSolutionSpec) -> PhiSeries:
    """Truncated ``Phi_{L,gamma}`` divided by its ``l = 0`` term.

    The sum runs over ``l = t E`` with ``t >= 0`` and total degree of ``t``
    at most ``spec.order``; the terms with some ``t_j < 0`` vanish because
    ``1/Gamma`` is zero at non-positive integers.
    """
    gamma = spec.gamma
    for g in gamma:
        if g.denominator == 1 and g < 0:
            raise ValueError("gamma has a negative integer coordinate; the base term vanishes")
    basis, coords = adapted_basis(spec.cfg, gamma)
    names = tuple(f"z{j + 1}" for j in range(len(basis)))
    coeffs = {}
    for t in monomials(len(basis), spec.order):
        l = vecmat(t, basis) if basis else (0,) * spec.cfg.N
        coeffs[t] = phi_coefficient(gamma, l)
    return PhiSeries(gamma, basis, coords, TruncatedSeries(names, spec.order, coeffs))


@dataclass(frozen=True)
class SeriesResidual:
    box: dict  # relation -> {key t: nonzero residual}
    euler: tuple  # per coordinate, {t: nonzero residual}
    verified_order: int

    @property
    def zero(self) -> bool:
        return not any(self.box.values()) and not any(self.euler)


def _falling_vec(x: Sequence, k: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for xi, ki in zip(x, k):
        for j in range(ki):
            out *= xi - j
    return out


def apply_operators_series(
    spec: FormalSolutionSpec,
    phi: PhiSeries,
    alpha: Optional[Sequence] = None,
    relations: Optional[Iterable[Sequence[int]]] = None,
) -> SeriesResidual:
    """Apply the box operators of ``relations`` and all Euler operators to ``phi``.

    A residual coefficient is only reported where every input coefficient
    it depends on is known (inside the truncation, or zero because some
    ``t_j < 0``).
    """
    cfg = spec.cfg
    alpha = rat_vector(psi(cfg, spec.gamma) if alpha is None else alpha)
    relations = [tuple(l) for l in (cfg.L_basis if relations is None else relations)]
    s = phi.series
    gamma = phi.gamma

    def known(t):
        return any(x < 0 for x in t) or _degree(t) <= s.order

    box = {}
    max_step = 0
    for rel in relations:
        if any(psi(cfg, rel)):
            raise ValueError(f"{rel} is not a relation")
        step = tuple(rel[i] for i in phi.coords)
        if phi.exponent(step) != rel:
            raise ValueError(f"{rel} is not in the span of the series basis")
        max_step = max(max_step, sum(abs(x) for x in step))
        plus = tuple(max(x, 0) for x in rel)
        minus = tuple(max(-x, 0) for x in rel)
        keys = set(s.coeffs) | {tuple(a + b for a, b in zip(t, step)) for t in s.coeffs}
        res = {}
        for t in keys:
            prev = tuple(a - b for a, b in zip(t, step))
            if not (known(t) and known(prev)):
                continue
            l = phi.exponent(t)
            x = [g + li for g, li in zip(gamma, l)]
            val = _falling_vec(x, plus) * s[t] if min(t, default=0) >= 0 else Fraction(0)
            if min(prev, default=0) >= 0:
                xp = [xi - ri for xi, ri in zip(x, rel)]
                val -= _falling_vec(xp, minus) * s[prev]
            if val:
                res[t] = val
        box[rel] = res

    shift = [a - b for a, b in zip(psi(cfg, gamma), alpha)]
    euler = []
    for i in range(cfg.r):
        euler.append({t: shift[i] * c for t, c in s.coeffs.items() if shift[i]})
    return SeriesResidual(box, tuple(euler), s.order - max_step)


# -- Horn G3 -----------------------------------------------------------------

XY = ("x", "y")


def g3_series(a, b, order: int) -> TruncatedSeries:
    """``sum (a)_{2m-n} (b)_{2n-m} / (m! n!) x^m y^n``."""
    coeffs = {}
    for m, n in monomials(2, order):
        coeffs[(m, n)] = pochhammer(a, 2 * m - n) * pochhammer(b, 2 * n - m) / (factorial(m) * factorial(n))
    return TruncatedSeries(XY, order, coeffs)


def g3_delta(order: int) -> TruncatedSeries:
    return TruncatedSeries(XY, order, {(0, 0): 1, (1, 0): 4, (0, 1): 4, (1, 1): 18, (2, 2): -27})


def _newton(residual, derivative, start: TruncatedSeries) -> TruncatedSeries:
    s = start
    for _ in range(start.order.bit_length() + 2):
        r = residual(s)
        if not r.coeffs:
            return s
        s = s - r * derivative(s).inverse()
    assert not residual(s).coeffs, "Newton iteration did not converge"
    return s


def g3_f_series(order: int) -> TruncatedSeries:
    """The root of ``x f^3 - y = f - f^2`` with ``f(0, 0) = 1``."""
    x = TruncatedSeries.variable("x", XY, order)
    y = TruncatedSeries.variable("y", XY, order)
    one = TruncatedSeries.constant(1, XY, order)
    return _newton(
        lambda f: x * f**3 - y - f + f * f,
        lambda f: 3 * x * f * f - 1 + 2 * f,
        one,
    )


def g3_g_series(order: int) -> TruncatedSeries:
    """The root of ``g (g - 1 - 3x)^2 = x^2 Delta`` with ``g(0, 0) = 1``.

    Writing ``g = 1 + 3x + x w`` turns the equation into
    ``(1 + 3x + x w) w^2 = Delta``, whose root with ``w(0) = -1`` is simple.
    """
    x = TruncatedSeries.variable("x", XY, order)
    delta = g3_delta(order)
    w = _newton(
        lambda w: (1 + 3 * x + x * w) * w * w - delta,
        lambda w: x * w * w + 2 * w * (1 + 3 * x + x * w),
        TruncatedSeries.constant(-1, XY, order),
    )
    return 1 + 3 * x + x * w


def verify_g3_closed_form(a, order: int) -> bool:
    """Check ``G3(a, 1-a) = f^a sqrt(g / Delta)`` coefficientwise through ``order``."""
    a = Fraction(a)
    if a.denominator == 1:
        raise ValueError("a must not be an integer")
    lhs = g3_series(a, 1 - a, order)
    rhs = g3_f_series(order) ** a * (g3_g_series(order) / g3_delta(order)).sqrt()
    return lhs == rhs
