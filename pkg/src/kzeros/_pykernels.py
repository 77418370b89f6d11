"""Pure-Python evaluation kernels.

Reference implementation of the hot loops. ``_ckernels`` mirrors this module
function for function; :mod:`kzeros._backend` picks one at import time.

``kv_right`` evaluates

    K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt,   Re z >= 0,

on the tilted contour ``t(s) = s - i*arg(z)*tanh(s)``. For large ``s`` the
phase of ``z cosh t`` vanishes, so the integrand decays double-exponentially
without oscillating, and the trapezoidal rule in ``s`` converges
geometrically. The step is halved until two levels agree.
"""
import cmath
import math

import numpy as np

from .errors import NonConvergence

NAME = "python"

_MAX_LEVELS = 10


def rgamma(x):
    """1/Gamma(x), zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 170.0:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def _series_order(nu):
    # I_{-n} = I_n for integer n; the raw series would start at a pole.
    if nu < 0.0 and nu == math.floor(nu):
        return -nu
    return nu


def iv_real(nu, x, tol, max_terms):
    """Power series for I_nu(x), x > 0."""
    nu = _series_order(nu)
    half = 0.5 * x
    q = half * half
    term = half ** nu * rgamma(nu + 1.0)
    total = term
    small = 0
    for k in range(1, max_terms):
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergence(f"I series for nu={nu}, x={x} did not converge")


def iv_complex(nu, z, tol, max_terms):
    """Power series for I_nu(z), principal branch."""
    nu = _series_order(nu)
    half = 0.5 * z
    q = half * half
    term = cmath.exp(nu * cmath.log(half)) * rgamma(nu + 1.0)
    total = term
    small = 0
    for k in range(1, max_terms):
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergence(f"I series for nu={nu}, z={z} did not converge")


def _initial_step(r):
    return min(0.5, 1.5 / math.sqrt(r))


def kv_real(nu, x, tol, max_terms):
    """K_nu(x) for x > 0 by the trapezoidal rule on the cosh integral."""
    nu = abs(nu)
    h = _initial_step(x)
    s_min = math.asinh(nu / x) + 1.0
    cut = 1e-2 * tol
    max_nodes = 20 * max_terms

    def f(s):
        e = math.exp(-x * math.cosh(s) + nu * s)
        return 0.5 * e * (1.0 + math.exp(-2.0 * nu * s))

    total = 0.5 * f(0.0)
    j = 0
    small = 0
    while True:
        j += 1
        if j > max_nodes:
            raise NonConvergence(f"K integral for nu={nu}, x={x} not truncated")
        v = f(j * h)
        total += v
        if j * h > s_min and v <= cut * total:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    s_max = j * h
    coarse = h * total
    for _ in range(_MAX_LEVELS):
        h *= 0.5
        odd = 0.0
        s = h
        while s <= s_max:
            odd += f(s)
            s += 2.0 * h
        fine = 0.5 * coarse + h * odd
        if abs(fine - coarse) <= 1e-2 * math.sqrt(tol) * abs(fine):
            return fine
        coarse = fine
    raise NonConvergence(f"K integral for nu={nu}, x={x} did not converge")


def kv_right(nu, z, tol, max_terms):
    """K_nu(z) for Re z >= 0, z != 0, on the tilted contour."""
    nu = abs(nu)
    z = complex(z)
    r = abs(z)
    phi = cmath.phase(z)
    h = _initial_step(r)
    s_min = math.asinh(nu / r) + 1.0
    cut = 1e-2 * tol
    max_nodes = 20 * max_terms

    def f(s):
        th = math.tanh(s)
        t = complex(s, -phi * th)
        dt = complex(1.0, -phi * (1.0 - th * th))
        e = cmath.exp(-z * cmath.cosh(t) + nu * t)
        return 0.5 * e * (1.0 + cmath.exp(-2.0 * nu * t)) * dt

    total = 0.5 * f(0.0)
    j = 0
    small = 0
    while True:
        j += 1
        if j > max_nodes:
            raise NonConvergence(f"K integral for nu={nu}, z={z} not truncated")
        v = f(j * h)
        total += v
        if j * h > s_min and abs(v) <= cut * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    s_max = j * h
    coarse = h * total
    for _ in range(_MAX_LEVELS):
        h *= 0.5
        odd = 0.0
        s = h
        while s <= s_max:
            odd += f(s)
            s += 2.0 * h
        fine = 0.5 * coarse + h * odd
        if abs(fine - coarse) <= 1e-2 * math.sqrt(tol) * abs(fine):
            return fine
        coarse = fine
    raise NonConvergence(f"K integral for nu={nu}, z={z} did not converge")


def g_values(nu, ys, sin_pi_nu, cos_pi_nu, tol, max_terms):
    """G_nu at each y, as (K + pi sin(pi nu) I)^2 + (pi cos(pi nu) I)^2."""
    ys = np.asarray(ys, dtype=float)
    out = np.empty_like(ys)
    for i, y in enumerate(ys.flat):
        k = kv_real(nu, y, tol, max_terms)
        iv = iv_real(nu, y, tol, max_terms)
        a = k + math.pi * sin_pi_nu * iv
        b = math.pi * cos_pi_nu * iv
        out.flat[i] = a * a + b * b
    return out
