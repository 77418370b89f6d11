r"""Modified Bessel functions of real order.

:math:`I_\nu` is summed from its power series. :math:`K_\nu` on the closed
right half-plane comes from the integral :math:`\int_0^\infty e^{-z\cosh t}
\cosh\nu t\,dt`, evaluated by a self-checking trapezoidal rule on a tilted
contour (see :mod:`kzeros._pykernels`). In the left half-plane it is
continued through

.. math::
    K_\nu(e^{m\pi i}w) = e^{-\nu m\pi i} K_\nu(w)
        - \pi i \frac{\sin \nu m\pi}{\sin\nu\pi} I_\nu(w),

with ``m = 1`` and :math:`\operatorname{Re} w \ge 0`, so the I-series is
never summed next to the cut.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field

from ._backend import kernels
from .errors import BranchCut, DomainError

__all__ = [
    "Precision",
    "Order",
    "classify_order",
    "special_order",
    "sin_pi",
    "cos_pi",
    "hankel_symbol",
    "besseli_real",
    "besselk_real",
    "besseli_complex",
    "besselk_complex",
    "besselk_neg_axis",
    "besselk_connection",
    "besselk_halfodd",
    "bessel_derivs",
]


def _default_tol() -> float:
    raw = os.environ.get("KZEROS_PRECISION")
    return float(raw) if raw else 1e-12


@dataclass(frozen=True)
class Precision:
    """Accuracy target shared by the series and quadrature kernels."""

    target_rel_tol: float = field(default_factory=_default_tol)
    max_terms: int = 500

    def __post_init__(self):
        if not self.target_rel_tol > 0:
            raise ValueError("target_rel_tol must be positive")
        if self.max_terms < 50:
            raise ValueError("max_terms must be at least 50")


def _prec(prec: Precision | None) -> Precision:
    return Precision() if prec is None else prec


def special_order(n: int) -> float:
    """The order 2n + 3/2."""
    return 2 * n + 1.5


@dataclass(frozen=True)
class Order:
    """A real order nu >= 3/2 with its position relative to the 2n + 3/2 grid.

    ``kind`` is ``"special"`` when nu = 2n + 3/2, ``"half_odd"`` for the other
    half-odd integers and ``"generic"`` otherwise. ``n`` is the index of the
    interval ``2n + 3/2 <= nu < 2n + 7/2``; ``d = nu - 1/2`` is set only for
    half-odd orders.
    """

    nu: float
    kind: str
    n: int
    d: int | None = None

    @property
    def is_half_odd(self) -> bool:
        return self.kind in ("special", "half_odd")


def classify_order(nu: float) -> Order:
    if not nu >= 1.5:
        raise DomainError(f"no zeros for nu < 1.5 (got {nu})", count=0)
    n = int(math.floor((nu - 1.5) / 2.0))
    if 2.0 * nu == math.floor(2.0 * nu) and int(2.0 * nu) % 2 == 1:
        d = int(nu - 0.5)
        if d % 2 == 1:
            return Order(nu, "special", (d - 1) // 2, d)
        return Order(nu, "half_odd", n, d)
    return Order(nu, "generic", n)


def sin_pi(x: float) -> float:
    """sin(pi x), exact at multiples of 1/2."""
    r = math.fmod(x, 2.0)
    if 2.0 * r == math.floor(2.0 * r):
        return (0.0, 1.0, 0.0, -1.0)[int(2.0 * r) % 4]
    return math.sin(math.pi * r)


def cos_pi(x: float) -> float:
    """cos(pi x), exact at multiples of 1/2."""
    r = math.fmod(abs(x), 2.0)
    if 2.0 * r == math.floor(2.0 * r):
        return (1.0, 0.0, -1.0, 0.0)[int(2.0 * r) % 4]
    return math.cos(math.pi * r)


def hankel_symbol(nu: float, k: int) -> float:
    """(nu, k) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 4^k).

    Evaluated as a running product so that vanishing factors give an exact 0.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    mu = 4.0 * nu * nu
    out = 1.0
    for j in range(1, k + 1):
        out *= (mu - (2 * j - 1) ** 2) / (4.0 * j)
    return out


def besseli_real(nu: float, x: float, prec: Precision | None = None) -> float:
    if not x > 0:
        raise DomainError(f"x must be positive (got {x})")
    p = _prec(prec)
    return kernels.iv_real(nu, float(x), p.target_rel_tol, p.max_terms)


def besselk_real(nu: float, x: float, prec: Precision | None = None) -> float:
    if not x > 0:
        raise DomainError(f"x must be positive (got {x})")
    p = _prec(prec)
    return kernels.kv_real(nu, float(x), p.target_rel_tol, p.max_terms)


def besselk_connection(nu: float, x: float, prec: Precision | None = None) -> float:
    """K_nu(x) = pi (I_{-nu}(x) - I_nu(x)) / (2 sin pi nu); cross-check only.

    Loses accuracy as sin(pi nu) -> 0 and for large x.
    """
    s = sin_pi(nu)
    if s == 0.0:
        raise DomainError("connection formula undefined at integer order")
    return math.pi * (besseli_real(-nu, x, prec) - besseli_real(nu, x, prec)) / (2.0 * s)


def besselk_halfodd(nu: float, z, prec: Precision | None = None):
    """Finite closed form of K_nu for half-odd nu = d + 1/2.

    K_nu(z) = sqrt(pi/(2z)) e^{-z} sum_{k=0}^{d} (nu, k) / (2z)^k.
    """
    order = classify_order(abs(nu))
    if not order.is_half_odd:
        raise DomainError(f"nu={nu} is not a half-odd integer")
    if isinstance(z, complex):
        exp, sqrt = cmath.exp, cmath.sqrt
    else:
        exp, sqrt = math.exp, math.sqrt
    total = 0.0
    for k in range(order.d + 1):
        total += hankel_symbol(nu, k) / (2.0 * z) ** k
    return sqrt(math.pi / (2.0 * z)) * exp(-z) * total


def besseli_complex(nu: float, z: complex, prec: Precision | None = None) -> complex:
    """I_nu(z) on the principal branch, |arg z| < pi.

    The series cancels for large |z| near the imaginary axis; relative
    accuracy degrades roughly like exp(|Im z| - |Re z|) there.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise BranchCut(f"I_nu({z}) is on the branch cut")
    p = _prec(prec)
    return kernels.iv_complex(nu, z, p.target_rel_tol, p.max_terms)


def besselk_complex(nu: float, z: complex, prec: Precision | None = None) -> complex:
    """K_nu(z) on the principal branch, |arg z| < pi."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise BranchCut(f"K_nu({z}) is on the branch cut; use besselk_neg_axis")
    p = _prec(prec)
    nu = abs(nu)
    if z.real > 0.0:
        return kernels.kv_right(nu, z, p.target_rel_tol, p.max_terms)
    if z.imag < 0.0:
        return besselk_complex(nu, z.conjugate(), p).conjugate()
    w = -z
    rot = complex(cos_pi(nu), -sin_pi(nu))
    kw = kernels.kv_right(nu, w, p.target_rel_tol, p.max_terms)
    iw = kernels.iv_complex(nu, w, p.target_rel_tol, p.max_terms)
    return rot * kw - 1j * math.pi * iw


def besselk_neg_axis(nu: float, x: float, m: int = 1,
                     prec: Precision | None = None) -> complex:
    """K_nu on the upper (m=1) or lower (m=-1) lip of the cut at -x."""
    if m not in (1, -1):
        raise ValueError("m must be +1 or -1")
    nu = abs(nu)
    kx = besselk_real(nu, x, prec)
    ix = besseli_real(nu, x, prec)
    # sin(nu m pi)/sin(nu pi) = m exactly for m = +-1, including integer nu
    rot = complex(cos_pi(nu), -m * sin_pi(nu))
    return rot * kx - 1j * math.pi * m * ix


def bessel_derivs(nu: float, z, prec: Precision | None = None):
    """(I'_nu(z), K'_nu(z)) from the order recurrences.

    A positive ``float`` argument takes the real path; anything else is
    treated as complex.
    """
    if isinstance(z, (float, int)) and not isinstance(z, bool) and z > 0:
        di = 0.5 * (besseli_real(nu - 1, z, prec) + besseli_real(nu + 1, z, prec))
        dk = -0.5 * (besselk_real(nu - 1, z, prec) + besselk_real(nu + 1, z, prec))
        return di, dk
    di = 0.5 * (besseli_complex(nu - 1, z, prec) + besseli_complex(nu + 1, z, prec))
    dk = -0.5 * (besselk_complex(nu - 1, z, prec) + besselk_complex(nu + 1, z, prec))
    return di, dk
