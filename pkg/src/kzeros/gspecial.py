r"""The weight :math:`G_\nu` and the special points :math:`x_n`.

:math:`G_\nu(x) = K_\nu(x)^2 + \pi^2 I_\nu(x) I_{-\nu}(x)` is positive except
at order :math:`\nu_n = 2n + 3/2`, where it has a double zero at the unique
positive solution :math:`x_n` of :math:`K_{\nu_n}(x) = \pi I_{\nu_n}(x)`;
:math:`-x_n` is the real zero of :math:`K_{\nu_n}`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .bessel import (
    Precision,
    bessel_derivs,
    besseli_real,
    besselk_neg_axis,
    besselk_real,
    cos_pi,
    hankel_symbol,
    sin_pi,
    special_order,
)
from .errors import BracketFailure, NonConvergence

__all__ = [
    "SpecialPoint",
    "g",
    "g_forms",
    "g_array",
    "solve_xn",
    "special_points",
    "xn_poly_crosscheck",
    "check_g_hessian",
    "sign_fact",
]

# Finite differences need smoother evaluations than the library default.
_FD_PREC = Precision(target_rel_tol=1e-15)


@dataclass(frozen=True)
class SpecialPoint:
    n: int
    nu_n: float
    x_n: float
    alpha_n: float
    beta_n: float
    identity_residuals: dict = field(default_factory=dict, compare=False)


def g_forms(nu: float, x: float, prec: Precision | None = None) -> tuple[float, float]:
    """Both textbook forms of G_nu(x).

    Returns ``(K^2 + pi^2 I^2 + 2 pi sin(pi nu) K I, K^2 + pi^2 I_nu I_{-nu})``.
    """
    k = besselk_real(nu, x, prec)
    i = besseli_real(nu, x, prec)
    im = besseli_real(-nu, x, prec)
    first = k * k + math.pi ** 2 * i * i + 2.0 * math.pi * sin_pi(nu) * k * i
    second = k * k + math.pi ** 2 * i * im
    return first, second


def g(nu: float, x: float, prec: Precision | None = None, check_forms: bool = False) -> float:
    """G_nu(x), computed as a sum of two squares.

    ``(K + pi sin(pi nu) I)^2 + (pi cos(pi nu) I)^2`` has no cancellation
    beyond the difference inside the first square, which keeps the double
    zero at (x_n, nu_n) resolvable.
    """
    k = besselk_real(nu, x, prec)
    i = besseli_real(nu, x, prec)
    a = k + math.pi * sin_pi(nu) * i
    b = math.pi * cos_pi(nu) * i
    value = a * a + b * b
    if check_forms:
        first, second = g_forms(nu, x, prec)
        scale = k * k + (math.pi * i) ** 2
        for other in (first, second):
            if abs(other - value) > 1e-10 * scale:
                raise ArithmeticError(
                    f"G forms disagree at nu={nu}, x={x}: {value!r} vs {other!r}")
    return value


def g_array(nu: float, ys, prec: Precision | None = None) -> np.ndarray:
    """Vectorized :func:`g` through the selected kernel backend."""
    p = Precision() if prec is None else prec
    return kernels.g_values(nu, np.asarray(ys, dtype=float), sin_pi(nu), cos_pi(nu),
                            p.target_rel_tol, p.max_terms)


def _f(nu, x, prec):
    return besselk_real(nu, x, prec) - math.pi * besseli_real(nu, x, prec)


def _alpha(nu, x, prec):
    di, dk = bessel_derivs(nu, float(x), prec)
    return -dk + math.pi * di


def sign_fact(n: int) -> float:
    """K_{nu_n}(x_{n+1}) - pi I_{nu_n}(x_{n+1}); negative for every n."""
    return _f(special_order(n), solve_xn(n + 1).x_n, None)


def xn_poly_crosscheck(n: int) -> float:
    """Scaled residual of -x_n in the degree 2n+1 polynomial for K_{nu_n}."""
    sp = solve_xn(n)
    nu = sp.nu_n
    d = 2 * n + 1
    z = -sp.x_n
    value = 0.0
    scale = 0.0
    for k in range(d + 1):
        c = hankel_symbol(nu, d - k) / 2.0 ** (d - k)
        value += c * z ** k
        scale += abs(c) * abs(z) ** k
    return abs(value) / scale


@lru_cache(maxsize=None)
def solve_xn(n: int) -> SpecialPoint:
    """Locate x_n, the root of K_{nu_n} = pi I_{nu_n}, and its derivative data.

    The bracket starts at x_{n-1} (the sequence increases); bisection narrows
    it to width 1e-3 and Newton finishes.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    nu = special_order(n)
    prec = _FD_PREC
    if n == 0:
        lo, hi = 0.5, 3.0
    else:
        lo = solve_xn(n - 1).x_n
        hi = lo + 10.0
    f_lo, f_hi = _f(nu, lo, prec), _f(nu, hi, prec)
    if not (f_lo > 0.0 > f_hi):
        raise BracketFailure(f"no sign change for x_{n} in [{lo}, {hi}]")
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if _f(nu, mid, prec) > 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(50):
        # F' = K' - pi I' = -alpha
        step = _f(nu, x, prec) / _alpha(nu, x, prec)
        x_new = min(max(x + step, lo), hi)
        done = abs(x_new - x) <= 4e-16 * x
        x = x_new
        if done:
            break
    else:
        raise NonConvergence(f"Newton iteration for x_{n} did not settle")

    k = besselk_real(nu, x, prec)
    alpha = _alpha(nu, x, prec)
    beta = _beta(nu, x)
    resid = {
        "F": abs(_f(nu, x, prec)) / k,
        "K_alpha_x_over_pi": abs(k * alpha * x / math.pi - 1.0),
        "neg_axis": abs(besselk_neg_axis(nu, x, 1, prec)) / k,
    }
    return SpecialPoint(n, nu, x, alpha, beta, resid)


def _beta(nu, x, h=1e-5):
    # d/dnu (-K_nu + pi I_nu) at fixed x, centred difference + one Richardson step
    def diff(step):
        up = -_f(nu + step, x, _FD_PREC)
        down = -_f(nu - step, x, _FD_PREC)
        return (up - down) / (2.0 * step)

    return (4.0 * diff(0.5 * h) - diff(h)) / 3.0


def special_points(n_max: int) -> list[SpecialPoint]:
    return [solve_xn(n) for n in range(n_max + 1)]


def _g2(x, nu):
    return g(nu, x, _FD_PREC)


def _richardson(fn, h):
    return (4.0 * fn(0.5 * h) - fn(h)) / 3.0


def check_g_hessian(n: int, h: float = 1e-4) -> dict[str, float]:
    """Residuals of the value, gradient and Hessian of G at (x_n, nu_n).

    Residuals are divided by 2(alpha^2 + beta^2 + pi^2 K^2), the size of the
    Hessian entries; ``K_identity`` is |K alpha x / pi - 1|.
    """
    sp = solve_xn(n)
    x, nu, a, b = sp.x_n, sp.nu_n, sp.alpha_n, sp.beta_n
    k = besselk_real(nu, x, _FD_PREC)
    g0 = _g2(x, nu)

    def gx(s):
        return (_g2(x + s, nu) - _g2(x - s, nu)) / (2 * s)

    def gn(s):
        return (_g2(x, nu + s) - _g2(x, nu - s)) / (2 * s)

    def gxx(s):
        return (_g2(x + s, nu) - 2 * g0 + _g2(x - s, nu)) / (s * s)

    def gnn(s):
        return (_g2(x, nu + s) - 2 * g0 + _g2(x, nu - s)) / (s * s)

    def gxn(s):
        return (_g2(x + s, nu + s) - _g2(x + s, nu - s)
                - _g2(x - s, nu + s) + _g2(x - s, nu - s)) / (4 * s * s)

    expected = {
        "G": (g0, 0.0),
        "G_x": (_richardson(gx, h), 0.0),
        "G_nu": (_richardson(gn, h), 0.0),
        "G_xx": (_richardson(gxx, h), 2 * a * a),
        "G_xnu": (_richardson(gxn, h), 2 * a * b),
        "G_nunu": (_richardson(gnn, h), 2 * b * b + 2 * math.pi ** 2 * k * k),
    }
    scale = 2.0 * (a * a + b * b + math.pi ** 2 * k * k)
    out = {name: abs(got - want) / scale for name, (got, want) in expected.items()}
    out["K_identity"] = abs(k * a * x / math.pi - 1.0)
    return out
