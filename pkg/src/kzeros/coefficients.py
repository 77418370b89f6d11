r"""Coefficient families of the algebraic equations for the zeros.

For :math:`\nu_n < \nu < \nu_{n+1}` the zeros of :math:`K_\nu` are the roots
of :math:`\sum_{k=0}^{N}\alpha_{N-k}z^k`, ``N = 2n + 2``, where

.. math::
    \alpha_m = \frac1m \sum_{k=1}^m \alpha_{m-k}
        \{a_{k+1} - (-1)^k M_k(\nu)\},\qquad \alpha_0 = 1,

the :math:`a_k` solve a unit lower-triangular system of Hankel symbols and
:math:`M_k` are the signed moments. At :math:`\nu = \nu_n \pm 0` the
:math:`\alpha_m` tend to the closed-form families ``c`` (from above) and
``d`` (from below).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bessel import Precision, classify_order, hankel_symbol, special_order
from .errors import ClosedFormMismatch, DomainError, FactorizationMismatch
from .moments import MomentVector, moment_vector

__all__ = [
    "RealPolynomial",
    "CoefficientSet",
    "a_coeffs",
    "alpha_coeffs",
    "coefficient_set",
    "halfodd_poly",
    "c_coeffs",
    "c_coeffs_recurrence",
    "d_coeffs",
    "d_coeffs_recurrence",
    "c_factorization_residual",
    "d_factorization_residual",
]


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial, coefficients in ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[-1] == 0.0:
            raise ValueError("leading coefficient must be non-zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def scale(self, z) -> float:
        """sum |c_k| |z|^k, the natural size of ``self(z)``."""
        r = abs(z)
        return float(sum(abs(c) * r ** k for k, c in enumerate(self.coeffs)))

    def roots(self) -> np.ndarray:
        """All roots, as eigenvalues of the companion matrix."""
        return np.roots(self.coeffs[::-1])

    def __mul__(self, other: "RealPolynomial") -> "RealPolynomial":
        return RealPolynomial(np.convolve(self.coeffs, other.coeffs))


@dataclass(frozen=True)
class CoefficientSet:
    nu: float
    a: tuple
    alpha: tuple
    moments_used: MomentVector | None = None

    def characteristic(self, degree: int | None = None) -> RealPolynomial:
        """sum_k alpha_{N-k} z^k for N = ``degree`` (default: all alphas)."""
        N = len(self.alpha) - 1 if degree is None else degree
        return RealPolynomial([self.alpha[N - k] for k in range(N + 1)])


def a_coeffs(nu: float, K: int) -> list[float]:
    """a_0..a_K from (nu+1, m)/2^m = sum_{k<=m} (nu, m-k)/2^(m-k) a_k."""
    if K < 0:
        raise ValueError("K must be non-negative")
    a = []
    for m in range(K + 1):
        rhs = hankel_symbol(nu + 1.0, m) / 2.0 ** m
        for k in range(m):
            rhs -= hankel_symbol(nu, m - k) / 2.0 ** (m - k) * a[k]
        a.append(rhs)
    return a


def _newton_recurrence(a, sums, M):
    # out_m = (1/m) sum_{k=1}^m out_{m-k} (a_{k+1} + sums[k])
    out = [1.0]
    for m in range(1, M + 1):
        acc = 0.0
        for k in range(1, m + 1):
            acc += out[m - k] * (a[k + 1] + sums[k])
        out.append(acc / m)
    return out


def alpha_coeffs(nu: float, M: int, moments: MomentVector) -> list[float]:
    """alpha_0..alpha_M; ``moments`` must hold M_1..M_M."""
    if len(moments) < M:
        raise ValueError(f"need {M} moments, got {len(moments)}")
    a = a_coeffs(nu, M + 1)
    sums = [0.0] + [-((-1) ** k) * moments[k] for k in range(1, M + 1)]
    return _newton_recurrence(a, sums, M)


def coefficient_set(nu: float, M: int, prec: Precision | None = None) -> CoefficientSet:
    """a, alpha and the moments behind them, for alpha up to index M."""
    mv = moment_vector(nu, M, prec)
    return CoefficientSet(nu, tuple(a_coeffs(nu, M + 1)),
                          tuple(alpha_coeffs(nu, M, mv)), mv)


def halfodd_poly(nu: float) -> RealPolynomial:
    """Polynomial part of K_nu at half-odd order nu = d + 1/2.

    coeff_k = (nu, d-k) / 2^(d-k); its roots are exactly the zeros of K_nu.
    """
    order = classify_order(nu)
    if not order.is_half_odd:
        raise DomainError(f"nu={nu} is not a half-odd integer")
    d = order.d
    return RealPolynomial([hankel_symbol(nu, d - k) / 2.0 ** (d - k) for k in range(d + 1)])


def _x_n(n, x_n):
    if x_n is None:
        from .gspecial import solve_xn
        x_n = solve_xn(n).x_n
    return x_n


def c_coeffs_recurrence(n: int, x_n: float | None = None) -> list[float]:
    """c_0..c_{2n+2} from the recurrence with M_k replaced by x_n^k."""
    x_n = _x_n(n, x_n)
    M = 2 * n + 2
    a = a_coeffs(special_order(n), M + 1)
    sums = [0.0] + [-((-1) ** k) * x_n ** k for k in range(1, M + 1)]
    return _newton_recurrence(a, sums, M)


def c_coeffs(n: int, x_n: float | None = None, tol: float = 1e-8) -> list[float]:
    """Limits of alpha_m as nu decreases to nu_n, m = 0..2n+2.

    c_m = (nu_n, m)/2^m + (nu_n, m-1)/2^(m-1) x_n. Checked against the
    recurrence form; raises ClosedFormMismatch beyond ``tol`` (relative to
    max(1, |c_m|)).
    """
    x_n = _x_n(n, x_n)
    nu = special_order(n)
    closed = [1.0]
    for m in range(1, 2 * n + 3):
        closed.append(hankel_symbol(nu, m) / 2.0 ** m
                      + hankel_symbol(nu, m - 1) / 2.0 ** (m - 1) * x_n)
    rec = c_coeffs_recurrence(n, x_n)
    worst = max(abs(r - c) / max(1.0, abs(c)) for r, c in zip(rec, closed))
    if worst > tol:
        raise ClosedFormMismatch(f"c^({n}) closed form vs recurrence: {worst:.3g}")
    return closed


def d_coeffs_recurrence(n: int, x_n: float | None = None) -> list[float]:
    """d_0..d_{2n} from the recurrence with M_k replaced by -x_n^k."""
    x_n = _x_n(n, x_n)
    M = 2 * n
    a = a_coeffs(special_order(n), M + 1)
    sums = [0.0] + [((-1) ** k) * x_n ** k for k in range(1, M + 1)]
    return _newton_recurrence(a, sums, M)


def d_coeffs(n: int, x_n: float | None = None, tol: float = 1e-8) -> list[float]:
    """Limits of alpha_m as nu increases to nu_n, m = 0..2n (n >= 1).

    d_m = sum_{k<=m} (-1)^k (nu_n, m-k)/2^(m-k) x_n^k. Raises
    FactorizationMismatch if (z + x_n) D(z) differs from the nu_n polynomial
    by more than ``tol`` in any coefficient.
    """
    if n < 1:
        raise ValueError("d coefficients need n >= 1")
    x_n = _x_n(n, x_n)
    nu = special_order(n)
    d = []
    for m in range(2 * n + 1):
        d.append(sum((-1) ** k * hankel_symbol(nu, m - k) / 2.0 ** (m - k) * x_n ** k
                     for k in range(m + 1)))
    worst = _d_factor_gap(n, x_n, d)
    if worst > tol:
        raise FactorizationMismatch(f"d^({n}) factorization gap {worst:.3g}")
    return d


def _coef_gap(lhs, rhs):
    return max(abs(p - q) / max(1.0, abs(q)) for p, q in zip(lhs, rhs))


def _d_factor_gap(n, x_n, d):
    D = RealPolynomial([d[2 * n - k] for k in range(2 * n + 1)])
    lhs = (RealPolynomial([x_n, 1.0]) * D).coeffs
    return _coef_gap(lhs, halfodd_poly(special_order(n)).coeffs)


def c_factorization_residual(n: int, x_n: float | None = None) -> float:
    """Coefficient gap in sum c_{2n+2-k} z^k = (z + x_n) P_n(z)."""
    x_n = _x_n(n, x_n)
    c = c_coeffs(n, x_n)
    lhs = [c[2 * n + 2 - k] for k in range(2 * n + 3)]
    rhs = (RealPolynomial([x_n, 1.0]) * halfodd_poly(special_order(n))).coeffs
    return _coef_gap(lhs, rhs)


def d_factorization_residual(n: int, x_n: float | None = None) -> float:
    """Coefficient gap in P_n(z) = (z + x_n) sum d_{2n-k} z^k."""
    x_n = _x_n(n, x_n)
    return _d_factor_gap(n, x_n, d_coeffs(n, x_n, tol=float("inf")))
