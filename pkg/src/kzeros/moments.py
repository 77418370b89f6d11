r"""Signed reciprocal moments of :math:`G_\nu`.

.. math::
    M_k(\nu) = \cos(\pi\nu)\int_0^\infty \frac{y^{k-1}}{G_\nu(y)}\,dy,
    \qquad k = 1, 2, \dots

Near 0 the integrand vanishes like :math:`y^{k-1+2\nu}`; at infinity it
decays like :math:`y^k e^{-2y}`. When :math:`\nu` approaches a special order
:math:`\nu_n` the weight :math:`G_\nu` nearly vanishes at :math:`x_n`, the
integral grows like :math:`1/|\nu-\nu_n|` and the cosine factor keeps the
product finite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import Precision, classify_order, cos_pi, special_order
from .errors import GuardBandViolation
from .gspecial import g_array, solve_xn
from .quadrature import integrate

__all__ = [
    "GUARD_BAND",
    "SPIKE_BAND",
    "MomentVector",
    "nearest_special",
    "moment",
    "moment_vector",
    "moment_limit_convergence",
]

GUARD_BAND = 1e-6
SPIKE_BAND = 1e-3
_REL_TOL = 1e-10
_MAX_PANELS = 2000


@dataclass(frozen=True)
class MomentVector:
    """M_1..M_K at one order; ``guard_flag`` marks the near-nu_n regime."""

    nu: float
    values: tuple
    abs_err: tuple
    guard_flag: bool = False
    n_panels: int = 0

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        """M_k, 1-based like the moment index."""
        if not 1 <= k <= len(self.values):
            raise IndexError(k)
        return self.values[k - 1]


def nearest_special(nu: float) -> tuple[int, float]:
    """(n, nu - nu_n) for the special order closest to nu."""
    n = max(0, int(round((nu - 1.5) / 2.0)))
    return n, nu - special_order(n)


def _check_order(nu):
    classify_order(nu)
    n, delta = nearest_special(nu)
    if abs(delta) < GUARD_BAND:
        raise GuardBandViolation(
            f"nu={nu} is within {GUARD_BAND:g} of nu_{n}={special_order(n)}")
    return n, delta


def moment_vector(nu: float, K: int, prec: Precision | None = None,
                  refine: bool = False) -> MomentVector:
    """Moments M_1..M_K sharing one adaptive partition."""
    if K < 1:
        raise ValueError("K must be at least 1")
    n, delta = _check_order(nu)
    c = cos_pi(nu)
    spiky = abs(delta) <= SPIKE_BAND
    if c == 0.0:
        zeros = (0.0,) * K
        return MomentVector(nu, zeros, zeros, spiky, 0)
    values, errors, panels = _integrals(nu, np.arange(K), n, delta, prec, refine)
    return MomentVector(nu, tuple(float(v) for v in c * values),
                        tuple(float(e) for e in abs(c) * errors), spiky, panels)


def moment(nu: float, k: int, prec: Precision | None = None) -> tuple[float, float]:
    """(M_k(nu), absolute error estimate)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n, delta = _check_order(nu)
    c = cos_pi(nu)
    if c == 0.0:
        return 0.0, 0.0
    values, errors, _ = _integrals(nu, np.array([k - 1]), n, delta, prec, False)
    return float(c * values[0]), float(abs(c) * errors[0])


def _integrals(nu, powers, n, delta, prec, refine):
    """Integrals of y^p / G_nu(y) over (0, inf) for each p in ``powers``."""
    split = max(1.0, 0.5 * nu)
    expo = 2.0 * nu
    powers = np.asarray(powers, dtype=float)[:, None]

    # [0, split]: y = split * u**(1/expo) flattens the y^(2 nu) onset.
    def lower(u):
        u = np.maximum(u, 1e-300)
        y = split * u ** (1.0 / expo)
        jac = y / (expo * u)
        return y ** powers * (jac / g_array(nu, y, prec))

    def upper(y):
        return y ** powers / g_array(nu, y, prec)

    upper_end = _tail_cutoff(nu, split, powers, prec)
    lower_pts = [0.0, 1.0]
    upper_pts = [split] + list(np.arange(split + 1.0, upper_end, 1.0)) + [upper_end]
    budget = _MAX_PANELS
    if abs(delta) <= SPIKE_BAND:
        budget *= 8
        for y in _spike_points(n, delta):
            if 0.0 < y < split:
                lower_pts.append((y / split) ** expo)
            elif split < y < upper_end:
                upper_pts.append(y)
    lo_val, lo_err, lo_n = integrate(lower, lower_pts, _REL_TOL, max_panels=budget,
                                     refine=refine)
    hi_val, hi_err, hi_n = integrate(upper, upper_pts, _REL_TOL, max_panels=budget,
                                     refine=refine)
    return lo_val + hi_val, lo_err + hi_err, lo_n + hi_n


def _tail_cutoff(nu, start, powers, prec):
    # Beyond Y the integrand behaves like y^p e^{-2y}; the remaining mass is
    # bounded by f(Y) / (2 - p/Y). Stop once that is 1e-3 of the tolerance.
    ys = np.arange(start, start + 120.0, 1.0)
    f = ys ** powers / g_array(nu, ys, prec)
    crude = f.sum(axis=1)
    for j, y in enumerate(ys):
        if y <= powers.max() or j == 0:
            continue
        tail = f[:, j] / (2.0 - powers[:, 0] / y)
        if np.all(tail <= 1e-3 * _REL_TOL * crude):
            return float(y)
    return float(ys[-1])


def _spike_points(n, delta):
    # G ~ alpha^2 (x - x_c)^2 + (pi cos(pi nu) I)^2 near the special point
    sp = solve_xn(n)
    x_n = sp.x_n
    centre = x_n - sp.beta_n * delta / sp.alpha_n
    width = math.pi * abs(math.sin(math.pi * delta)) / (sp.alpha_n * sp.alpha_n * x_n)
    pts = [x_n + s * d for d in (1e-1, 1e-2, 1e-3) for s in (-1.0, 1.0)]
    pts.append(centre)
    for m in (1.0, 4.0, 16.0, 64.0, 256.0):
        pts.extend((centre - m * width, centre + m * width))
    return pts


def moment_limit_convergence(n: int, m: int, deltas, prec: Precision | None = None) -> dict:
    """|M_m(nu_n + s*delta) - s*x_n^m| for s = +1 and s = -1 and each delta.

    Returns ``{+1: [...], -1: [...]}``; the minus side is omitted for n = 0,
    where nu_0 - delta < 3/2.
    """
    deltas = list(deltas)
    if any(d <= 0 for d in deltas) or min(deltas) < GUARD_BAND:
        raise ValueError("deltas must be positive and at least the guard band")
    x_n = solve_xn(n).x_n
    nu_n = special_order(n)
    target = x_n ** m
    out = {1: [abs(moment(nu_n + d, m, prec)[0] - target) for d in deltas]}
    if n > 0:
        out[-1] = [abs(moment(nu_n - d, m, prec)[0] + target) for d in deltas]
    return out
