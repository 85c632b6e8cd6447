import math
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from gkzalg.lattice import (
    FundamentalBlock,
    adjugate,
    det,
    hnf,
    integer_kernel,
    inverse,
    lattice_member,
    matmul,
    matvec,
    rank,
    rat_vector,
    solve_rational,
)

from oracles import lattice_member_bruteforce

small = st.integers(-5, 5)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def square(n_min=1, n_max=4):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(matrices())
def test_hnf_invariants(m):
    res = hnf(m)
    assert [list(r) for r in matmul(res.U, m)] == [list(r) for r in res.H]
    assert abs(det(res.U)) == 1
    assert res.rank == sympy.Matrix(m).rank()
    piv = res.pivots
    assert list(piv) == sorted(set(piv))
    for i, c in enumerate(piv):
        assert res.H[i][c] > 0
        assert all(x == 0 for x in res.H[i][:c])
        for k in range(i):
            assert 0 <= res.H[k][c] < res.H[i][c]
    assert all(not any(row) for row in res.H[res.rank:])


def test_hnf_known_example():
    assert hnf([[2, 4], [1, 3]]).H == ((1, 1), (0, 2))


@given(square())
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@given(square())
def test_adjugate(m):
    if det(m) == 0:
        with pytest.raises(ValueError):
            adjugate(m)
        return
    adj, d = adjugate(m)
    assert d == det(m)
    n = len(m)
    assert [list(r) for r in matmul(adj, m)] == [[d if i == j else 0 for j in range(n)] for i in range(n)]


@given(square())
def test_inverse_when_regular(m):
    if det(m) == 0:
        return
    prod = matmul(inverse(m), m)
    assert all(prod[i][j] == (i == j) for i in range(len(m)) for j in range(len(m)))


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_rational(m, x):
    x = x[: len(m[0])]
    b = matvec(m, x)
    sol = solve_rational(m, b)
    assert sol is not None and tuple(matvec(m, sol)) == tuple(b)


def test_solve_rational_inconsistent():
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None


@given(matrices())
def test_integer_kernel_is_saturated(m):
    ker = integer_kernel(m)
    ncols = len(m[0])
    assert len(ker) == ncols - rank(m)
    for v in ker:
        assert not any(matvec(m, v))
    # the kernel lattice is saturated: its rank-size minors have gcd 1
    if ker:
        rows = list(range(len(ker)))
        minors = [sympy.Matrix(ker).extract(rows, list(c)).det() for c in combinations(range(ncols), len(ker))]
        assert math.gcd(*minors) == 1


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=2),
       st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_lattice_member_vs_bruteforce(basis, v):
    if rank(basis) < len(basis):
        return
    assert lattice_member(basis, v) == lattice_member_bruteforce(basis, v, bound=12)


def test_lattice_member_rational_target():
    assert not lattice_member([[2, 0], [0, 2]], [Fraction(1, 2), 0])
    assert lattice_member([[2, 0], [0, 2]], [4, -2])


@given(square(2, 3), st.lists(st.fractions(max_denominator=6), min_size=3, max_size=3))
def test_block_points(gens, shift):
    if det(gens) == 0:
        return
    r = len(gens)
    shift = shift[:r]
    blk = FundamentalBlock(gens)
    pts = blk.points(shift)
    assert len(pts) == abs(det(gens))
    assert len(set(pts)) == len(pts)
    inv = inverse(gens)
    for p in pts:
        # integral translate of the shift, coordinates in [0, 1) on the generators
        assert all((Fraction(a) - Fraction(b)).denominator == 1 for a, b in zip(p, shift))
        lam = [sum(Fraction(p[i]) * inv[i][j] for i in range(r)) for j in range(r)]
        assert all(0 <= x < 1 for x in lam)


def test_rat_vector_rejects_floats():
    with pytest.raises(TypeError):
        rat_vector([0.5])
