import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kzeros.bessel import besseli_real, besselk_real
from kzeros.gspecial import (
    check_g_hessian,
    g,
    g_array,
    g_forms,
    sign_fact,
    solve_xn,
    special_points,
    xn_poly_crosscheck,
)

TABLE_XN = [1.0, 2.32219, 3.64674, 4.97179, 6.29702]


def test_forms_agree():
    first, second = g_forms(4.2, 3.7)
    assert first == pytest.approx(second, rel=1e-12)
    assert g(4.2, 3.7, check_forms=True) == pytest.approx(6.06047570306797, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(nu=st.floats(1.5, 10.0), x=st.floats(0.05, 20.0))
def test_g_positive_off_special_points(nu, x):
    assert g(nu, x) > 0.0


def test_g_array_matches_scalar():
    ys = np.array([0.2, 1.0, 2.5, 9.0])
    np.testing.assert_allclose(g_array(5.1, ys), [g(5.1, y) for y in ys], rtol=1e-13)


@pytest.mark.parametrize("n", range(5))
def test_special_points(n):
    sp = solve_xn(n)
    assert sp.nu_n == 2 * n + 1.5
    assert sp.x_n == pytest.approx(TABLE_XN[n], abs=1e-4 if n else 1e-12)
    assert besselk_real(sp.nu_n, sp.x_n) == pytest.approx(math.pi * besseli_real(sp.nu_n, sp.x_n),
                                                          rel=1e-13)
    assert all(v <= 1e-12 for v in sp.identity_residuals.values())
    assert xn_poly_crosscheck(n) <= 1e-14


def test_points_increase_and_sign_fact():
    xs = [sp.x_n for sp in special_points(4)]
    assert xs == sorted(xs)
    assert all(sign_fact(n) < 0 for n in range(4))


@pytest.mark.parametrize("n", [0, 1, 3])
def test_hessian_at_double_zero(n):
    res = check_g_hessian(n)
    assert res["G"] <= 1e-12
    assert max(res[k] for k in ("G_x", "G_nu", "G_xx", "G_xnu", "G_nunu")) <= 1e-7
    assert res["K_identity"] <= 1e-12


def test_double_zero_is_a_minimum():
    sp = solve_xn(1)
    assert g(sp.nu_n, sp.x_n) < 1e-25
    assert g(sp.nu_n, sp.x_n + 1e-3) > 0
    assert g(sp.nu_n + 1e-3, sp.x_n) > 0
