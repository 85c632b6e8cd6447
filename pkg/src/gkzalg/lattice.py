"""Exact integer and rational linear algebra.

Vectors are tuples and matrices are tuples of row tuples.  Integer data uses
Python ints, rational data uses :class:`fractions.Fraction`; nothing in this
module touches floating point.

Hermite normal form convention (row style): for an ``m x n`` integer matrix
``M`` we return a unimodular ``U`` with ``U M = H`` where the nonzero rows of
``H`` come first, each pivot (leading nonzero entry) is positive, pivot
columns strictly increase, and every entry above a pivot lies in
``[0, pivot)``.  With this convention ``H`` is unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Optional, Sequence

IntVector = tuple
IntMatrix = tuple
RatVector = tuple


def int_vector(values: Iterable) -> tuple:
    out = []
    for x in values:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            x = x.numerator
        if not isinstance(x, int):
            raise TypeError(f"expected an integer, got {x!r}")
        out.append(int(x))
    return tuple(out)


def rat_vector(values: Iterable) -> tuple:
    out = []
    for x in values:
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        out.append(Fraction(x))
    return tuple(out)


def int_matrix(rows: Iterable[Iterable]) -> tuple:
    m = tuple(int_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def shape(m: Sequence[Sequence]) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix, i.e. ``sum_i v[i] * m[i]``."""
    if not m:
        return ()
    ncols = len(m[0])
    out = [0] * ncols
    for c, row in zip(v, m):
        if c:
            for j in range(ncols):
                out[j] += c * row[j]
    return tuple(out)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


def common_denominator(v: Iterable[Fraction]) -> int:
    return lcm(*(Fraction(x).denominator for x in v))


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector, same direction."""
    d = common_denominator(v)
    w = [int(Fraction(x) * d) for x in v]
    g = reduce(math.gcd, w, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in w)


@dataclass(frozen=True)
class HnfResult:
    H: tuple
    U: tuple
    rank: int

    @property
    def pivots(self) -> tuple:
        cols = []
        for row in self.H[: self.rank]:
            cols.append(next(j for j, x in enumerate(row) if x))
        return tuple(cols)


def hnf(m: Sequence[Sequence[int]]) -> HnfResult:
    """Row Hermite normal form with unimodular transform, ``U M = H``."""
    rows = [list(int_vector(r)) for r in m]
    if not rows:
        raise ValueError("hnf of an empty matrix")
    nrows, ncols = len(rows), len(rows[0])
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]

    def sub(k, i, q):
        rk, ri, uk, ui = rows[k], rows[i], u[k], u[i]
        for j in range(ncols):
            rk[j] -= q * ri[j]
        for j in range(nrows):
            uk[j] -= q * ui[j]

    i = 0
    for j in range(ncols):
        if i == nrows:
            break
        while True:
            nz = [k for k in range(i, nrows) if rows[k][j]]
            if not nz:
                break
            k = min(nz, key=lambda k: abs(rows[k][j]))
            if k != i:
                rows[i], rows[k] = rows[k], rows[i]
                u[i], u[k] = u[k], u[i]
            if len(nz) == 1:
                break
            for k in range(i + 1, nrows):
                if rows[k][j]:
                    sub(k, i, rows[k][j] // rows[i][j])
        if not rows[i][j]:
            continue
        if rows[i][j] < 0:
            rows[i] = [-x for x in rows[i]]
            u[i] = [-x for x in u[i]]
        for k in range(i):
            q = rows[k][j] // rows[i][j]
            if q:
                sub(k, i, q)
        i += 1
    return HnfResult(tuple(map(tuple, rows)), tuple(map(tuple, u)), i)


def det(m: Sequence[Sequence]) -> int | Fraction:
    """Determinant by fraction-free (Bareiss) elimination for integer input."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if not all(isinstance(x, int) for r in m for x in r):
        d = common_denominator(x for r in m for x in r)
        return Fraction(det([[int(Fraction(x) * d) for x in r] for r in m]), d**n)
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(m: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    i = 0
    for j in range(ncols):
        k = next((k for k in range(i, nrows) if a[k][j]), None)
        if k is None:
            continue
        a[i], a[k] = a[k], a[i]
        piv = a[i][j]
        a[i] = [x / piv for x in a[i]]
        for k in range(nrows):
            if k != i and a[k][j]:
                c = a[k][j]
                a[k] = [x - c * y for x, y in zip(a[k], a[i])]
        pivots.append(j)
        i += 1
        if i == nrows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def solve_rational(m: Sequence[Sequence], b: Sequence) -> Optional[tuple]:
    """Solve ``m x = b`` over Q.

    Returns None when the system is inconsistent.  Free coordinates (the
    non-pivot columns of the echelon form of ``m``, which coincide with the
    non-pivot columns of its Hermite form) are set to zero.
    """
    nrows = len(m)
    if len(b) != nrows:
        raise ValueError("dimension mismatch")
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, j in zip(red, pivots):
        x[j] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def adjugate(m: Sequence[Sequence[int]]) -> tuple[tuple, int]:
    """Return ``(adj, d)`` with ``m adj = adj m = d I`` and ``d = det m != 0``."""
    d = det(m)
    if d == 0:
        raise ValueError("singular matrix")
    inv = inverse(m)
    adj = tuple(tuple(int(x * d) for x in row) for row in inv)
    return adj, d


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple:
    """Basis (as rows, in Hermite form) of ``{x in Z^n : m x = 0}``."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols)
    n = len(m[0])
    res = hnf(transpose(m))
    kernel = res.U[res.rank :]
    if not kernel:
        return ()
    return hnf(kernel).H[: n - res.rank]


def lattice_member(basis: Sequence[Sequence[int]], v: Sequence) -> bool:
    """True iff ``v`` is an integer combination of the rows of ``basis``."""
    v = [Fraction(x) for x in v]
    if not basis:
        return all(x == 0 for x in v)
    res = hnf(basis)
    for row, j in zip(res.H, res.pivots):
        q = v[j] / row[j]
        if q.denominator != 1:
            return False
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


class LatticeReducer:
    """Precomputed Hermite basis for repeated membership queries on one lattice."""

    def __init__(self, basis: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        if basis:
            res = hnf(basis)
            self.rows = res.H[: res.rank]
            self.pivots = res.pivots
        else:
            self.rows, self.pivots = (), ()

    def contains_scaled(self, num: Sequence[int], den: int) -> bool:
        """Membership of the rational vector ``num / den``."""
        v = list(num)
        for row, j in zip(self.rows, self.pivots):
            q, rem = divmod(v[j], row[j] * den)
            if rem:
                return False
            if q:
                qd = q * den
                v = [x - qd * y for x, y in zip(v, row)]
        return not any(v)

    def contains(self, v: Sequence) -> bool:
        d = common_denominator(v)
        return self.contains_scaled([int(Fraction(x) * d) for x in v], d)


class FundamentalBlock:
    """Half-open parallelepiped ``{sum_j t_j b_j : 0 <= t_j < 1}`` of independent ``b_j``.

    ``points(shift)`` lists the ``|det|`` points of ``shift + Z^r`` inside
    the block, one per coset of ``Z^r`` modulo the lattice spanned by the
    ``b_j``.
    """

    def __init__(self, generators: Sequence[Sequence[int]]):
        self.generators = int_matrix(generators)
        r = len(self.generators)
        if any(len(g) != r for g in self.generators):
            raise ValueError("need r independent vectors in Z^r")
        self.adj, d = adjugate(self.generators)
        self.det = abs(d)
        self.sign = 1 if d > 0 else -1
        diag = [hnf(self.generators).H[i][i] for i in range(r)]
        self.coset_reps = tuple(product(*(range(x) for x in diag)))

    def scaled_points(self, shift_num: Sequence[int], den: int) -> list:
        """Numerators (over ``den``) of the block points of ``shift_num/den + Z^r``."""
        modulus = den * self.det
        gens, adj, sign, dt = self.generators, self.adj, self.sign, self.det
        r = len(gens)
        out = []
        for z in self.coset_reps:
            x = [s + den * zi for s, zi in zip(shift_num, z)]
            coeff = [(sign * sum(x[k] * adj[k][j] for k in range(r))) % modulus for j in range(r)]
            num = [0] * r
            for c, g in zip(coeff, gens):
                if c:
                    for k in range(r):
                        num[k] += c * g[k]
            point = []
            for val in num:
                q, rem = divmod(val, dt)
                if rem:
                    raise ArithmeticError("block point is not in the shifted lattice")
                point.append(q)
            out.append(tuple(point))
        return out

    def points(self, shift: Optional[Sequence] = None) -> list:
        r = len(self.generators)
        shift = rat_vector(shift) if shift is not None else (Fraction(0),) * r
        den = common_denominator(shift)
        nums = self.scaled_points([int(x * den) for x in shift], den)
        return [tuple(Fraction(x, den) for x in p) for p in nums]
