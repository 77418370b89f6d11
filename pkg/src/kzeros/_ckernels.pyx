# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels; same functions and semantics as ``_pykernels``."""
from libc.math cimport (exp, cos, sin, cosh, sinh, tanh, asinh, sqrt, log,
                        atan2, fabs, floor, lgamma, tgamma, pow, hypot, M_PI)

import numpy as np
cimport numpy as cnp

from .errors import NonConvergence

NAME = "cython"

cdef int _MAX_LEVELS = 10


cdef double _rgamma(double x) nogil:
    if x <= 0.0 and x == floor(x):
        return 0.0
    if x > 170.0:
        return exp(-lgamma(x))
    return 1.0 / tgamma(x)


def rgamma(double x):
    """1/Gamma(x), zero at the poles."""
    return _rgamma(x)


cdef inline double _series_order(double nu) nogil:
    if nu < 0.0 and nu == floor(nu):
        return -nu
    return nu


cdef int _iv_real(double nu, double x, double tol, int max_terms,
                  double *out) nogil:
    cdef double half = 0.5 * x
    cdef double q = half * half
    cdef double term, total
    cdef int k, small = 0
    nu = _series_order(nu)
    term = pow(half, nu) * _rgamma(nu + 1.0)
    total = term
    for k in range(1, max_terms):
        term *= q / (k * (nu + k))
        total += term
        if fabs(term) <= tol * fabs(total):
            small += 1
            if small >= 3:
                out[0] = total
                return 0
        else:
            small = 0
    return -1


def iv_real(double nu, double x, double tol, int max_terms):
    """Power series for I_nu(x), x > 0."""
    cdef double out
    if _iv_real(nu, x, tol, max_terms, &out) != 0:
        raise NonConvergence(f"I series for nu={nu}, x={x} did not converge")
    return out


def iv_complex(double nu, z, double tol, int max_terms):
    """Power series for I_nu(z), principal branch."""
    cdef double zr = z.real, zi = z.imag
    cdef double hr = 0.5 * zr, hi = 0.5 * zi
    cdef double qr = hr * hr - hi * hi, qi = 2.0 * hr * hi
    cdef double lr, li, mag, tr, ti, sr = 0.0, si = 0.0, fr, fi, tmp, d
    cdef int k, small = 0
    nu = _series_order(nu)
    lr = log(hypot(hr, hi))
    li = atan2(hi, hr)
    mag = exp(nu * lr) * _rgamma(nu + 1.0)
    tr = mag * cos(nu * li)
    ti = mag * sin(nu * li)
    sr = tr
    si = ti
    for k in range(1, max_terms):
        d = 1.0 / (k * (nu + k))
        fr = qr * d
        fi = qi * d
        tmp = tr * fr - ti * fi
        ti = tr * fi + ti * fr
        tr = tmp
        sr += tr
        si += ti
        if hypot(tr, ti) <= tol * hypot(sr, si):
            small += 1
            if small >= 3:
                return complex(sr, si)
        else:
            small = 0
    raise NonConvergence(f"I series for nu={nu}, z={z} did not converge")


cdef inline double _initial_step(double r) nogil:
    cdef double h = 1.5 / sqrt(r)
    return h if h < 0.5 else 0.5


cdef inline double _kr_f(double nu, double x, double s) nogil:
    return 0.5 * exp(-x * cosh(s) + nu * s) * (1.0 + exp(-2.0 * nu * s))


cdef int _kv_real(double nu, double x, double tol, int max_terms,
                  double *out) nogil:
    cdef double h = _initial_step(x)
    cdef double s_min, cut = 1e-2 * tol, total, v, s_max, coarse, fine, odd, s
    cdef int j = 0, small = 0, level
    cdef int max_nodes = 20 * max_terms
    nu = fabs(nu)
    s_min = asinh(nu / x) + 1.0
    total = 0.5 * _kr_f(nu, x, 0.0)
    while True:
        j += 1
        if j > max_nodes:
            return -1
        v = _kr_f(nu, x, j * h)
        total += v
        if j * h > s_min and v <= cut * total:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    s_max = j * h
    coarse = h * total
    for level in range(_MAX_LEVELS):
        h *= 0.5
        odd = 0.0
        s = h
        while s <= s_max:
            odd += _kr_f(nu, x, s)
            s += 2.0 * h
        fine = 0.5 * coarse + h * odd
        if fabs(fine - coarse) <= 1e-2 * sqrt(tol) * fabs(fine):
            out[0] = fine
            return 0
        coarse = fine
    return -1


def kv_real(double nu, double x, double tol, int max_terms):
    """K_nu(x) for x > 0 by the trapezoidal rule on the cosh integral."""
    cdef double out
    if _kv_real(nu, x, tol, max_terms, &out) != 0:
        raise NonConvergence(f"K integral for nu={nu}, x={x} did not converge")
    return out


cdef inline void _kc_f(double nu, double zr, double zi, double phi, double s,
                       double *fr, double *fi) nogil:
    cdef double th = tanh(s)
    cdef double y = -phi * th
    # t = s + i y ; cosh t = cosh s cos y + i sinh s sin y
    cdef double chr_ = cosh(s) * cos(y), chi = sinh(s) * sin(y)
    # exponent: -z cosh t + nu t
    cdef double er = -(zr * chr_ - zi * chi) + nu * s
    cdef double ei = -(zr * chi + zi * chr_) + nu * y
    cdef double m = 0.5 * exp(er)
    cdef double ar = m * cos(ei), ai = m * sin(ei)
    # 1 + exp(-2 nu t)
    cdef double m2 = exp(-2.0 * nu * s)
    cdef double br = 1.0 + m2 * cos(-2.0 * nu * y), bi = m2 * sin(-2.0 * nu * y)
    cdef double pr = ar * br - ai * bi, pi_ = ar * bi + ai * br
    # dt/ds = 1 - i phi sech^2 s
    cdef double di = -phi * (1.0 - th * th)
    fr[0] = pr - pi_ * di
    fi[0] = pi_ + pr * di


def kv_right(double nu, z, double tol, int max_terms):
    """K_nu(z) for Re z >= 0, z != 0, on the tilted contour."""
    cdef double zr = z.real, zi = z.imag
    cdef double r = hypot(zr, zi), phi = atan2(zi, zr)
    cdef double h = _initial_step(r)
    cdef double s_min, cut = 1e-2 * tol
    cdef double tr, ti, vr, vi, cr, ci, gr, gi, orr, oi, s, s_max
    cdef int j = 0, small = 0, level
    cdef int max_nodes = 20 * max_terms
    nu = fabs(nu)
    s_min = asinh(nu / r) + 1.0
    with nogil:
        _kc_f(nu, zr, zi, phi, 0.0, &vr, &vi)
        tr = 0.5 * vr
        ti = 0.5 * vi
        while True:
            j += 1
            if j > max_nodes:
                break
            _kc_f(nu, zr, zi, phi, j * h, &vr, &vi)
            tr += vr
            ti += vi
            if j * h > s_min and hypot(vr, vi) <= cut * hypot(tr, ti):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
    if j > max_nodes:
        raise NonConvergence(f"K integral for nu={nu}, z={z} not truncated")
    s_max = j * h
    cr = h * tr
    ci = h * ti
    for level in range(_MAX_LEVELS):
        h *= 0.5
        orr = 0.0
        oi = 0.0
        s = h
        with nogil:
            while s <= s_max:
                _kc_f(nu, zr, zi, phi, s, &vr, &vi)
                orr += vr
                oi += vi
                s += 2.0 * h
        gr = 0.5 * cr + h * orr
        gi = 0.5 * ci + h * oi
        if hypot(gr - cr, gi - ci) <= 1e-2 * sqrt(tol) * hypot(gr, gi):
            return complex(gr, gi)
        cr = gr
        ci = gi
    raise NonConvergence(f"K integral for nu={nu}, z={z} did not converge")


def g_values(double nu, ys, double sin_pi_nu, double cos_pi_nu, double tol,
             int max_terms):
    """G_nu at each y, as (K + pi sin(pi nu) I)^2 + (pi cos(pi nu) I)^2."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(
        ys, dtype=np.float64).ravel()
    cdef Py_ssize_t n = flat.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double k, iv, a, b
    cdef int bad = 0
    with nogil:
        for i in range(n):
            if _kv_real(nu, flat[i], tol, max_terms, &k) != 0:
                bad = 1
                break
            if _iv_real(nu, flat[i], tol, max_terms, &iv) != 0:
                bad = 1
                break
            a = k + M_PI * sin_pi_nu * iv
            b = M_PI * cos_pi_nu * iv
            out[i] = a * a + b * b
    if bad:
        raise NonConvergence(f"G evaluation for nu={nu} did not converge")
    return out.reshape(np.shape(ys))
