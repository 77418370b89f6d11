import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kzeros.bessel import (
    Precision,
    bessel_derivs,
    besseli_complex,
    besseli_real,
    besselk_complex,
    besselk_connection,
    besselk_halfodd,
    besselk_neg_axis,
    besselk_real,
    classify_order,
    cos_pi,
    hankel_symbol,
    sin_pi,
    special_order,
)
from kzeros.errors import BranchCut, DomainError

from .conftest import mp_i, mp_k


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 2.2, 3.7, 6.0, 9.5, 12.3])
@pytest.mark.parametrize("x", [0.01, 0.3, 1.0, 2.5, 7.0, 25.0, 80.0])
def test_real_against_mpmath(nu, x):
    assert besselk_real(nu, x) == pytest.approx(mp_k(nu, x).real, rel=1e-12)
    assert besseli_real(nu, x) == pytest.approx(mp_i(nu, x).real, rel=1e-12)


@pytest.mark.parametrize("nu", [1.5, 2.0, 4.2, 7.3, 9.5])
@pytest.mark.parametrize("z", [1 + 1j, 3 - 2j, 0.2 + 5j, -1.2 + 0.4j, -2.7 - 0.6j,
                               -0.5 + 3j, -6.0 + 1e-3j, 8 + 0.1j])
def test_complex_against_mpmath(nu, z):
    assert abs(besselk_complex(nu, z) - mp_k(nu, z)) <= 1e-11 * abs(mp_k(nu, z))
    assert abs(besseli_complex(nu, z) - mp_i(nu, z)) <= 1e-11 * abs(mp_i(nu, z))


def test_negative_order_symmetry():
    assert besselk_real(-2.3, 1.7) == pytest.approx(besselk_real(2.3, 1.7), rel=1e-14)
    assert besseli_real(-3, 1.7) == pytest.approx(besseli_real(3, 1.7), rel=1e-14)


def test_halfodd_closed_form():
    x = 1.3
    expected = math.sqrt(math.pi / (2 * x)) * math.exp(-x) * (1 + 1 / x)
    assert besselk_halfodd(1.5, x) == pytest.approx(expected, rel=1e-15)
    for nu in (1.5, 2.5, 5.5):
        assert besselk_halfodd(nu, x) == pytest.approx(besselk_real(nu, x), rel=1e-13)
        z = -1.4 + 0.9j
        assert abs(besselk_halfodd(nu, z) - besselk_complex(nu, z)) <= 1e-12 * abs(besselk_halfodd(nu, z))


def test_connection_formula_and_integer_order():
    assert besselk_connection(2.3, 1.1) == pytest.approx(besselk_real(2.3, 1.1), rel=1e-10)
    with pytest.raises(DomainError):
        besselk_connection(2.0, 1.1)


def test_branch_cut():
    with pytest.raises(BranchCut):
        besselk_complex(2.2, -1.0)
    with pytest.raises(BranchCut):
        besseli_complex(2.2, -1.0 + 0j)
    with pytest.raises(DomainError):
        besselk_real(2.2, -1.0)


@pytest.mark.parametrize("nu", [1.5, 2.2, 4.0, 5.5])
def test_cut_lips_are_limits(nu):
    x, eps = 1.8, 1e-9
    up = besselk_neg_axis(nu, x, 1)
    lo = besselk_neg_axis(nu, x, -1)
    assert abs(up - besselk_complex(nu, complex(-x, eps))) < 1e-7 * abs(up)
    assert abs(lo - besselk_complex(nu, complex(-x, -eps))) < 1e-7 * abs(lo)
    assert abs(lo - up.conjugate()) < 1e-15 * abs(up)


def test_special_orders_and_classification():
    assert [special_order(n) for n in range(3)] == [1.5, 3.5, 5.5]
    assert classify_order(3.5).kind == "special"
    assert classify_order(4.5).kind == "half_odd"
    assert classify_order(4.2).kind == "generic"
    with pytest.raises(DomainError) as exc:
        classify_order(1.4)
    assert "no zeros for nu < 1.5" in str(exc.value)
    assert exc.value.count == 0


def test_exact_trig_at_half_integers():
    assert [sin_pi(k / 2) for k in range(5)] == [0.0, 1.0, 0.0, -1.0, 0.0]
    assert [cos_pi(k / 2) for k in range(5)] == [1.0, 0.0, -1.0, 0.0, 1.0]
    assert cos_pi(2.5) == 0.0 and sin_pi(3.5) == -1.0


def test_hankel_symbol():
    assert hankel_symbol(1.5, 2) == 0.0
    assert hankel_symbol(2.5, 1) == 6.0
    assert hankel_symbol(2.5, 2) == 12.0


def test_precision_validation(monkeypatch):
    with pytest.raises(ValueError):
        Precision(target_rel_tol=0.0)
    with pytest.raises(ValueError):
        Precision(max_terms=10)
    monkeypatch.setenv("KZEROS_PRECISION", "1e-9")
    assert Precision().target_rel_tol == 1e-9


@settings(max_examples=60, deadline=None)
@given(nu=st.floats(1.5, 10.0), r=st.floats(0.2, 8.0), theta=st.floats(-3.0, 3.0))
def test_wronskian_property(nu, r, theta):
    z = complex(r * math.cos(theta), r * math.sin(theta))
    if abs(z.imag) < 1e-3 and z.real < 0:
        z = complex(z.real, 1e-3)
    i, k = besseli_complex(nu, z), besselk_complex(nu, z)
    di, dk = bessel_derivs(nu, z)
    assert abs(z * (i * dk - di * k) + 1.0) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(nu=st.floats(0.0, 12.0), x=st.floats(0.05, 40.0))
def test_real_k_positive_and_decreasing(nu, x):
    assert besselk_real(nu, x) > besselk_real(nu, x * 1.01) > 0.0
