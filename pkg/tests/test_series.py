from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, strategies as st

from gkzalg.asystem import build_configuration, gamma_lift
from gkzalg.errors import NonConvergentDirection
from gkzalg.series import (
    XY,
    FormalSolutionSpec,
    PhiSeries,
    TruncatedSeries,
    adapted_basis,
    apply_operators_series,
    g3_delta,
    g3_f_series,
    g3_g_series,
    g3_series,
    monomials,
    phi_series,
    pochhammer,
    reciprocal_gamma_ratio,
    verify_g3_closed_form,
)

ORDER = 4
coef = st.fractions(min_value=-5, max_value=5, max_denominator=5)


def series(order=ORDER):
    keys = list(monomials(2, order))
    return st.lists(coef, min_size=len(keys), max_size=len(keys)).map(
        lambda cs: TruncatedSeries(XY, order, dict(zip(keys, cs)))
    )


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries(XY, ORDER)


@given(series())
def test_inverse(a):
    if not a.constant_term:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == TruncatedSeries.constant(1, XY, ORDER)


@given(series(), st.fractions(min_value=-3, max_value=3, max_denominator=4), st.integers(1, 3))
def test_rational_powers(a, q, n):
    a = a - a.constant_term + 1
    assert a**q * a**q == a ** (2 * q)
    # (a^(1/n))^n == a
    assert (a ** F(1, n)) ** n == a


def test_sqrt_known():
    x = TruncatedSeries.variable("x", XY, 5)
    s = (1 + 4 * x).sqrt()
    # central binomial generating function
    expected = {(k, 0): F(-1) ** (k + 1) * 2 * F(factorial(2 * k - 2), factorial(k) * factorial(k - 1)) for k in range(1, 6)}
    assert s[(0, 0)] == 1
    for m, c in expected.items():
        assert s[m] == c


def test_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries(XY, -1)
    with pytest.raises(ValueError):
        TruncatedSeries(XY, 2, {(1,): 1})
    with pytest.raises(ValueError):
        TruncatedSeries(XY, 2) + TruncatedSeries(("u", "v"), 2)
    with pytest.raises(ValueError):
        (TruncatedSeries.constant(2, XY, 2)) ** F(1, 2)


def test_pochhammer():
    assert pochhammer(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2)
    assert pochhammer(F(1, 2), 0) == 1
    assert pochhammer(F(1, 3), -2) == 1 / ((F(1, 3) - 1) * (F(1, 3) - 2))
    for n in range(-3, 4):
        for m in range(-3, 4):
            x = F(2, 7)
            assert pochhammer(x, n + m) == pochhammer(x, n) * pochhammer(x + n, m)


def test_reciprocal_gamma_ratio():
    g = F(1, 3)
    assert reciprocal_gamma_ratio(g, 2) == 1 / ((g + 1) * (g + 2))
    assert reciprocal_gamma_ratio(g, -2) == g * (g - 1)
    assert reciprocal_gamma_ratio(0, 1) == 1
    assert reciprocal_gamma_ratio(0, -1) == 0


def gauss_phi(a, b, c, order):
    from gkzalg.io import bundled_system

    cfg = bundled_system("gauss").cfg
    spec = FormalSolutionSpec(cfg, (-a, -b, c - 1, 0), order)
    return spec, phi_series(spec)


@pytest.mark.parametrize("abc", [(F(1, 6), F(5, 6), F(1, 2)), (F(-1, 3), F(2, 5), F(7, 4))])
def test_gauss_coefficients(abc):
    a, b, c = abc
    spec, phi = gauss_phi(a, b, c, 8)
    assert phi.basis == ((-1, -1, 1, 1),)
    for k in range(9):
        assert phi.series[(k,)] == pochhammer(a, k) * pochhammer(b, k) / (pochhammer(c, k) * factorial(k))
    res = apply_operators_series(spec, phi)
    assert res.zero and res.verified_order == 7


def test_residual_detects_wrong_coefficient():
    spec, phi = gauss_phi(F(1, 6), F(5, 6), F(1, 2), 6)
    coeffs = dict(phi.series.coeffs)
    coeffs[(3,)] += 1
    bad = PhiSeries(phi.gamma, phi.basis, phi.coords, TruncatedSeries(phi.series.variables, 6, coeffs))
    assert not apply_operators_series(spec, bad).zero


def test_residual_detects_wrong_weight():
    spec, phi = gauss_phi(F(1, 6), F(5, 6), F(1, 2), 4)
    assert not apply_operators_series(spec, phi, alpha=(0, 0, 0)).zero


def test_non_relation_rejected():
    spec, phi = gauss_phi(F(1, 6), F(5, 6), F(1, 2), 4)
    with pytest.raises(ValueError):
        apply_operators_series(spec, phi, relations=[(1, 0, 0, 0)])


def test_non_convergent_direction():
    cfg = build_configuration([(1, 0), (1, 1), (1, 2)])
    with pytest.raises(NonConvergentDirection):
        adapted_basis(cfg, (F(1, 2), F(1, 3), F(1, 5)))


def test_gamma_lift_feeds_series(systems):
    desc = systems["horn-g3"]
    gamma = gamma_lift(desc.cfg, desc.alpha)
    spec = FormalSolutionSpec(desc.cfg, gamma, 5)
    phi = phi_series(spec)
    assert apply_operators_series(spec, phi).zero


# reference expansions, order 4
F_REF = {
    (0, 0): 1, (0, 1): 1, (1, 0): -1,
    (2, 0): 2, (1, 1): -1, (0, 2): -1,
    (3, 0): -5, (2, 1): 3, (0, 3): 2,
    (4, 0): 14, (3, 1): -10, (1, 3): 1, (0, 4): -5,
}


def _g_reference():
    x, y = (TruncatedSeries.variable(v, XY, 4) for v in XY)
    d = x - y
    return 1 + 2 * x - x * (x + 2 * y) + 2 * x * d * d - x * d * d * (5 * x + 4 * y)


def test_f_expansion():
    assert g3_f_series(4) == TruncatedSeries(XY, 4, F_REF)


def test_g_expansion():
    assert g3_g_series(4) == _g_reference()


def test_defining_equations():
    x, y = (TruncatedSeries.variable(v, XY, 8) for v in XY)
    f, g = g3_f_series(8), g3_g_series(8)
    assert x * f**3 - y == f - f * f
    assert g * (g - 1 - 3 * x) ** 2 == x * x * g3_delta(8)


def test_cross_identity():
    x = TruncatedSeries.variable("x", XY, 10)
    f = g3_f_series(10)
    assert g3_g_series(10) == 1 + 4 * x - 2 * x * f - 3 * x * x * f * f


@pytest.mark.parametrize("a", [F(1, 2), F(1, 3), F(1, 5), F(-2, 7)])
def test_closed_form(a):
    assert verify_g3_closed_form(a, 5)


def test_closed_form_fails_off_the_line():
    # b != 1 - a: the identity should not hold
    lhs = g3_series(F(1, 3), F(1, 2), 4)
    rhs = g3_f_series(4) ** F(1, 3) * (g3_g_series(4) / g3_delta(4)).sqrt()
    assert lhs != rhs


def test_closed_form_rejects_integer():
    with pytest.raises(ValueError):
        verify_g3_closed_form(2, 3)
