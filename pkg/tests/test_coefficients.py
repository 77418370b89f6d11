import numpy as np
import pytest

from kzeros.coefficients import (
    RealPolynomial,
    a_coeffs,
    c_coeffs,
    c_coeffs_recurrence,
    c_factorization_residual,
    coefficient_set,
    d_coeffs,
    d_coeffs_recurrence,
    d_factorization_residual,
    halfodd_poly,
)
from kzeros.errors import DomainError


def test_polynomial_basics():
    p = RealPolynomial([2.0, -3.0, 1.0])
    assert p.degree == 2 and p(1.0) == 0.0 and p(2.0) == 0.0
    assert sorted(p.roots().real) == pytest.approx([1.0, 2.0])
    assert (p * RealPolynomial([1.0, 1.0])).coeffs == (2.0, -1.0, -2.0, 1.0)
    assert p.scale(2.0) == 2 + 6 + 4
    with pytest.raises(ValueError):
        RealPolynomial([1.0, 0.0])


def test_a_coeffs():
    assert a_coeffs(1.5, 4) == pytest.approx([1, 2, 1, -1, 1])
    with pytest.raises(ValueError):
        a_coeffs(1.5, -1)


def test_halfodd_poly():
    assert halfodd_poly(2.5).coeffs == (3.0, 3.0, 1.0)
    assert halfodd_poly(1.5).coeffs == (1.0, 1.0)
    roots = halfodd_poly(2.5).roots()
    assert sorted(roots, key=lambda z: z.imag)[1] == pytest.approx(-1.5 + np.sqrt(3) / 2 * 1j)
    with pytest.raises(DomainError):
        halfodd_poly(4.2)


def _sorted_roots(p):
    return sorted(p.roots(), key=lambda z: (round(z.real, 6), z.imag))


def test_characteristic_at_half_odd_order():
    cs = coefficient_set(2.5, 2)
    r = _sorted_roots(cs.characteristic())
    assert r[0] == pytest.approx(-1.5 - 0.8660254j, abs=1e-7)
    assert r[1] == pytest.approx(-1.5 + 0.8660254j, abs=1e-7)


@pytest.mark.parametrize("nu,expected", [
    (2.0, [-1.28137 - 0.429485j, -1.28137 + 0.429485j]),
    (4.2, [-2.73967 - 0.606267j, -2.73967 + 0.606267j,
           -2.02987 - 2.38525j, -2.02987 + 2.38525j]),
])
def test_characteristic_roots_match_table(nu, expected):
    roots = coefficient_set(nu, len(expected)).characteristic().roots()
    for z in expected:
        assert min(abs(roots - z)) <= 1e-5


def test_near_nu0_tends_to_double_root():
    alpha = coefficient_set(1.5 + 1e-3, 2).alpha
    assert alpha == pytest.approx([1.0, 2.0, 1.0], abs=1e-2)


@pytest.mark.parametrize("n", range(5))
def test_c_family(n):
    assert c_coeffs(n, tol=1e-10) == pytest.approx(c_coeffs_recurrence(n), rel=1e-12, abs=1e-12)
    assert c_factorization_residual(n) <= 1e-12


@pytest.mark.parametrize("n", range(1, 5))
def test_d_family(n):
    assert d_coeffs(n) == pytest.approx(d_coeffs_recurrence(n), rel=1e-12, abs=1e-12)
    assert d_factorization_residual(n) <= 1e-12


def test_d_needs_positive_n():
    with pytest.raises(ValueError):
        d_coeffs(0)


@pytest.mark.parametrize("n", [0, 1])
def test_alpha_tends_to_c_from_above(n):
    c = np.array(c_coeffs(n))
    gaps = []
    for delta in (1e-1, 1e-2, 1e-3):
        alpha = np.array(coefficient_set(2 * n + 1.5 + delta, 2 * n + 2).alpha)
        gaps.append(np.max(np.abs(alpha - c) / np.maximum(1.0, np.abs(c))))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2


def test_alpha_tends_to_d_from_below():
    d = np.array(d_coeffs(1))
    gaps = []
    for delta in (1e-1, 1e-2, 1e-3):
        alpha = np.array(coefficient_set(3.5 - delta, 2).alpha)
        gaps.append(np.max(np.abs(alpha - d) / np.maximum(1.0, np.abs(d))))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2
