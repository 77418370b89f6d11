"""Zeros of K_nu: counting, root extraction, Newton polishing, verification
and continuation sweeps over the order."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bessel import (
    Precision,
    bessel_derivs,
    besseli_complex,
    besseli_real,
    besselk_complex,
    besselk_neg_axis,
    classify_order,
    cos_pi,
    sin_pi,
    special_order,
)
from .coefficients import CoefficientSet, RealPolynomial, coefficient_set, halfodd_poly
from .errors import DomainError, PolishDivergence, TrackingAmbiguity
from .gspecial import solve_xn
from .moments import GUARD_BAND, nearest_special

__all__ = [
    "HALF_ODD_POLY",
    "CHAR_POLY",
    "CHAR_POLY_POLISHED",
    "ZeroSet",
    "Check",
    "VerifyReport",
    "SweepResult",
    "Crossing",
    "count_zeros",
    "characteristic_poly",
    "polish",
    "solve_zeros",
    "verify_zeroset",
    "sweep",
]

HALF_ODD_POLY = "HalfOddPoly"
CHAR_POLY = "CharPoly"
CHAR_POLY_POLISHED = "CharPolyPolished"

RESIDUAL_GATE = 1e-8
PAIR_TOL = 1e-10
_MAX_MOVE = 0.1
_MAX_ITER = 30


@dataclass(frozen=True)
class ZeroSet:
    """All zeros of K_nu at one order.

    ``zeros`` are sorted by |Im| then Re, conjugates adjacent with the upper
    one first; ``pair_index[i]`` is the index of the conjugate partner (``i``
    itself for a real zero). ``raw_zeros`` are the unpolished polynomial
    roots in the same order.
    """

    nu: float
    zeros: tuple
    residuals: tuple
    method: str
    pair_index: tuple
    raw_zeros: tuple = ()
    pair_gap: float = 0.0
    snapped: bool = False
    coefficients: CoefficientSet | None = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.zeros)

    @property
    def real_zeros(self) -> list[complex]:
        return [z for i, z in enumerate(self.zeros) if self.pair_index[i] == i]

    @property
    def upper(self) -> list[complex]:
        """Zeros in the closed upper half-plane, one per conjugate pair."""
        return [z for z in self.zeros if z.imag >= 0.0]


def count_zeros(nu: float) -> int:
    """N(nu): nu - 1/2 at half-odd orders, otherwise the nearest even integer."""
    order = classify_order(nu)
    if order.is_half_odd:
        return order.d
    return 2 * order.n + 2


def _snap(nu):
    n, delta = nearest_special(nu)
    if delta != 0.0 and abs(delta) < GUARD_BAND:
        return special_order(n), True
    return nu, False


def _char_coefficients(nu, prec):
    return coefficient_set(nu, count_zeros(nu), prec)


def characteristic_poly(nu: float, prec: Precision | None = None) -> RealPolynomial:
    """sum_k alpha_{N-k} z^k with N = N(nu), from the signed moments."""
    return _char_coefficients(nu, prec).characteristic()


def _residual(k, dk, z):
    return abs(k) / (abs(dk) * abs(z))


def _polish_cut(nu, x, prec):
    # Upper lip of the cut: g(x) = K_nu(-x + i0). At nu = nu_n,
    # g = i (K - pi I) is purely imaginary, so Newton stays on the axis.
    x0 = x
    rot = complex(cos_pi(nu), -sin_pi(nu))
    for _ in range(_MAX_ITER):
        gx = besselk_neg_axis(nu, x, 1, prec)
        di, dk = bessel_derivs(nu, float(x), prec)
        dg = rot * dk - 1j * math.pi * di
        step = (gx / dg).real
        x -= step
        if abs(x - x0) > _MAX_MOVE:
            raise PolishDivergence(f"real zero at nu={nu} moved from {-x0} to {-x}")
        if abs(step) <= 1e-12 * abs(x):
            break
    gx = besselk_neg_axis(nu, x, 1, prec)
    di, dk = bessel_derivs(nu, float(x), prec)
    dg = rot * dk - 1j * math.pi * di
    return complex(-x, 0.0), _residual(gx, dg, x)


def _kd(nu, z, prec):
    k = besselk_complex(nu, z, prec)
    dk = -0.5 * (besselk_complex(nu - 1, z, prec) + besselk_complex(nu + 1, z, prec))
    return k, dk


def polish(nu: float, z0: complex, prec: Precision | None = None,
           on_cut: bool | None = None) -> tuple[complex, float]:
    """Newton iteration z <- z - K_nu(z)/K'_nu(z).

    Returns ``(z, residual)`` with residual ``|K(z)| / (|K'(z)| |z|)``.
    Iterates are kept in the half-plane they start in, since K_nu jumps
    across the cut. ``on_cut`` (default: real ``z0`` at nu = nu_n) polishes a
    real zero on the upper lip instead.
    """
    z0 = complex(z0)
    if on_cut is None:
        on_cut = z0.imag == 0.0 and z0.real < 0.0 and classify_order(nu).kind == "special"
    if on_cut:
        return _polish_cut(nu, -z0.real, prec)
    if z0.imag == 0.0 and z0.real <= 0.0:
        raise PolishDivergence(f"start {z0} lies on the branch cut")
    side = 1.0 if z0.imag > 0.0 else -1.0
    z = z0
    k, dk = _kd(nu, z, prec)
    converged = False
    for _ in range(_MAX_ITER):
        step = k / dk
        trial = z - step
        while trial.real < 0.0 and trial.imag * side <= 0.0:
            step *= 0.5
            trial = z - step
        z = trial
        if abs(z - z0) > _MAX_MOVE:
            raise PolishDivergence(f"zero at nu={nu} moved from {z0} to {z}")
        k, dk = _kd(nu, z, prec)
        if abs(step) <= 1e-12 * abs(z):
            converged = True
            break
    res = _residual(k, dk, z)
    if not converged and res > RESIDUAL_GATE:
        raise PolishDivergence(f"Newton did not converge from {z0} (residual {res:.3g})")
    return z, res


def _upper_guesses(roots, n_real):
    """Starting points in the closed upper half-plane, one per zero pair.

    ``n_real`` real zeros are expected (0 or 1). Surplus real roots come from
    conjugate pairs that rounding pushed onto the axis; adjacent ones are
    merged back into a complex guess.
    """
    roots = np.asarray(roots, dtype=complex)
    upper = [r for r in roots if r.imag > 0.0]
    reals = sorted((r.real for r in roots if r.imag == 0.0))
    lower = [r for r in roots if r.imag < 0.0]
    if len(lower) != len(upper):
        raise PolishDivergence("polynomial roots are not closed under conjugation")
    real_guesses = []
    if n_real:
        # the lone real zero is the one farthest from its neighbours
        if len(reals) == 1:
            real_guesses = [reals.pop()]
        else:
            gaps = [min(abs(r - s) for s in reals if s is not r) for r in reals]
            j = int(np.argmax(gaps))
            real_guesses = [reals.pop(j)]
    if len(reals) % 2:
        raise PolishDivergence("odd number of surplus real roots")
    for a, b in zip(reals[::2], reals[1::2]):
        mid = 0.5 * (a + b)
        upper.append(complex(mid, max(0.5 * abs(b - a), 1e-8 * abs(mid))))
    return [complex(r, 0.0) for r in real_guesses], upper


def _order_zeros(upper, reals):
    """Sorted zeros with conjugate partners."""
    items = [(abs(z.imag), z.real, z) for z in upper] + [(0.0, x.real, x) for x in reals]
    items.sort(key=lambda t: (t[0], t[1]))
    zeros, pair = [], []
    for _, _, z in items:
        i = len(zeros)
        if z.imag == 0.0:
            zeros.append(z)
            pair.append(i)
        else:
            zeros.extend((z, z.conjugate()))
            pair.extend((i + 1, i))
    return zeros, pair


def solve_zeros(nu: float, prec: Precision | None = None, do_polish: bool = True) -> ZeroSet:
    """All N(nu) zeros of K_nu.

    Half-odd orders use the explicit polynomial; other orders the
    moment-based characteristic equation. Orders within the moment guard
    band of nu_n are snapped to nu_n. Each root is Newton-polished against
    K_nu itself and conjugate pairs are symmetrized.
    """
    nu, snapped = _snap(nu)
    order = classify_order(nu)
    coeffs = None
    if order.is_half_odd:
        roots = halfodd_poly(nu).roots()
        method = HALF_ODD_POLY
    else:
        coeffs = _char_coefficients(nu, prec)
        roots = coeffs.characteristic().roots()
        method = CHAR_POLY_POLISHED if do_polish else CHAR_POLY
    n_real = 1 if order.kind == "special" else 0
    real_guess, upper_guess = _upper_guesses(roots, n_real)
    raw_zeros, _ = _order_zeros(upper_guess, real_guess)
    if not do_polish:
        res = tuple(_residual_at(nu, z, prec) for z in raw_zeros)
        zeros, pair = _order_zeros(upper_guess, real_guess)
        return ZeroSet(nu, tuple(zeros), res, method, tuple(pair), tuple(raw_zeros),
                       0.0, snapped, coeffs)

    reals, uppers, res_map = [], [], {}
    for x in real_guess:
        z, r = polish(nu, x, prec, on_cut=True)
        reals.append(z)
        res_map[z] = r
    gap = 0.0
    for g in upper_guess:
        z_up, r_up = polish(nu, g, prec)
        z_lo, r_lo = polish(nu, g.conjugate(), prec)
        gap = max(gap, abs(z_up - z_lo.conjugate()))
        z = 0.5 * (z_up + z_lo.conjugate())
        uppers.append(z)
        res_map[z] = max(r_up, r_lo)
    zeros, pair = _order_zeros(uppers, reals)
    residuals = tuple(res_map[z] if z in res_map else res_map[z.conjugate()] for z in zeros)
    return ZeroSet(nu, tuple(zeros), residuals, method, tuple(pair), tuple(raw_zeros),
                   gap, snapped, coeffs)


def _residual_at(nu, z, prec):
    if z.imag == 0.0:
        x = -z.real
        gx = besselk_neg_axis(nu, x, 1, prec)
        di, dk = bessel_derivs(nu, float(x), prec)
        dg = complex(cos_pi(nu), -sin_pi(nu)) * dk - 1j * math.pi * di
        return _residual(gx, dg, x)
    k, dk = _kd(nu, z, prec)
    return _residual(k, dk, z)


def _wronskian_gap(nu, z, prec):
    # z I_nu(z) K'_nu(z) + 1 vanishes identically; at a zero it certifies K' != 0
    if z.imag == 0.0:
        x = -z.real
        rot = complex(cos_pi(nu), sin_pi(nu))
        i_z = rot * besseli_real(nu, x, prec)
        di, dk = bessel_derivs(nu, float(x), prec)
        dkz = -(rot.conjugate() * dk - 1j * math.pi * di)
        return abs(z * i_z * dkz + 1.0), abs(dkz)
    _, dk = _kd(nu, z, prec)
    return abs(z * besseli_complex(nu, z, prec) * dk + 1.0), abs(dk)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    value: float | None = None


@dataclass
class VerifyReport:
    nu: float
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name, ok, detail="", value=None):
        self.checks.append(Check(name, bool(ok), detail, value))


def verify_zeroset(zs: ZeroSet, exclusivity: bool = False,
                   prec: Precision | None = None) -> VerifyReport:
    """Recompute residuals and check count, pairing, sign and simplicity.

    With ``exclusivity=True`` (orders above nu_1 with a characteristic
    polynomial) each root is also evaluated in the lower-interval equation
    ``sum_{k<=N-2} alpha_{N-2-k} z^k``, which must not vanish there.
    """
    rep = VerifyReport(zs.nu)
    order = classify_order(zs.nu)
    N = count_zeros(zs.nu)
    zeros = list(zs.zeros)
    rep.add("count", len(zeros) == N, f"{len(zeros)} zeros, expected {N}")
    if not zeros:
        return rep

    def attempt(name, fn):
        # a check that cannot be evaluated is reported, never raised
        try:
            fn()
        except Exception as exc:
            rep.add(name, False, f"{type(exc).__name__}: {exc}")

    def pairing():
        if len(zs.pair_index) != len(zeros):
            raise ValueError("pair_index and zeros differ in length")
        gap = max(abs(z - zeros[zs.pair_index[i]].conjugate()) for i, z in enumerate(zeros))
        rep.add("pairing", gap <= PAIR_TOL, f"max conjugate gap {gap:.3g}")

    def real_zeros():
        real = [i for i in range(len(zeros)) if zs.pair_index[i] == i]
        want = 1 if order.kind == "special" else 0
        nonreal_ok = all(abs(zeros[i].imag) > 1e-9 for i in range(len(zeros)) if i not in real)
        rep.add("real_zeros", len(real) == want and nonreal_ok,
                f"{len(real)} real zeros, expected {want}")

    def negative_real_part():
        max_re = max(z.real for z in zeros)
        if zs.nu <= 9.5:
            rep.add("negative_real_part", max_re < 0.0, f"max Re = {max_re:.6g}")
        else:
            rep.add("negative_real_part", True,
                    f"max Re = {max_re:.6g}" + ("" if max_re < 0 else " (not asserted above 9.5)"))

    def residuals():
        res = max(_residual_at(zs.nu, z, prec) for z in zeros)
        rep.add("residuals", res <= RESIDUAL_GATE, f"max residual {res:.3g}", res)

    def simplicity():
        gaps = [_wronskian_gap(zs.nu, z, prec) for z in zeros]
        worst = max(g for g, _ in gaps)
        rep.add("simplicity", worst <= 1e-6 and all(d > 0 for _, d in gaps),
                f"max |z I K' + 1| = {worst:.3g}")

    def exclusive():
        lower = zs.coefficients.characteristic(N - 2)
        vals = [abs(lower(z)) for z in zeros]
        rep.add("exclusivity", min(vals) > 1e-3,
                f"min |lower-interval polynomial| = {min(vals):.3g}")

    checks = [("pairing", pairing), ("real_zeros", real_zeros),
              ("negative_real_part", negative_real_part), ("residuals", residuals),
              ("simplicity", simplicity)]
    if exclusivity and zs.coefficients is not None and N >= 4:
        checks.append(("exclusivity", exclusive))
    for name, fn in checks:
        attempt(name, fn)
    return rep


@dataclass(frozen=True)
class Crossing:
    """What the sweep saw around one special order nu_n."""

    nu_n: float
    x_n: float
    side: str
    ok: bool
    detail: str


@dataclass
class SweepResult:
    grid: tuple
    zero_sets: tuple
    track_ids: tuple
    crossings: list

    @property
    def upper_track_counts(self) -> list[int]:
        return [len(zs.upper) for zs in self.zero_sets]

    def rows(self):
        """(nu, track_id, re, im, residual) per zero, in grid order.

        Upper-half and real zeros carry positive ids; the conjugate partner of
        track ``t`` is reported as ``-t``.
        """
        for zs, ids in zip(self.zero_sets, self.track_ids):
            for z, t, r in zip(zs.zeros, ids, zs.residuals):
                yield zs.nu, t, z.real, z.imag, r


def _grid(nu_from, nu_to, step):
    if not (1.5 <= nu_from < nu_to) or not step > 0:
        raise DomainError("sweep needs 1.5 <= from < to and step > 0")
    count = int(math.floor((nu_to - nu_from) / step + 1e-9)) + 1
    grid = []
    for i in range(count):
        nu = round(nu_from + i * step, 12)
        grid.append(_snap(nu)[0])
    return grid


def _assign(prev, cur):
    """Optimal matching of zero lists; raises on near-ties."""
    if not prev or not cur:
        return {}
    cost = np.abs(np.subtract.outer(np.asarray(prev), np.asarray(cur)))
    rows, cols = linear_sum_assignment(cost)
    best = cost[rows, cols].sum()
    if len(rows) > 1:
        for r, c in zip(rows, cols):
            alt = cost.copy()
            alt[r, c] = 1e18
            ar, ac = linear_sum_assignment(alt)
            if alt[ar, ac].sum() - best < 1e-9:
                raise TrackingAmbiguity(f"two assignments within 1e-9 (cost {best:.6g})")
    return dict(zip(rows.tolist(), cols.tolist()))


def sweep(nu_from: float, nu_to: float, step: float, prec: Precision | None = None,
          workers: int | None = None) -> SweepResult:
    """Zero tracks of K_nu over an order grid.

    Zeros in the closed upper half-plane are matched between neighbouring
    grid points by minimal total displacement; new tracks start where the
    count grows. Grid points within the guard band of nu_n are snapped onto
    it, and each nu_n in range gets a Crossing record for both sides.
    """
    grid = _grid(nu_from, nu_to, step)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            sets = list(pool.map(solve_zeros, grid, [prec] * len(grid)))
    else:
        sets = [solve_zeros(nu, prec) for nu in grid]

    next_id = 1
    uppers_prev, ids_prev = [], []
    track_ids = []
    for zs in sets:
        upper = zs.upper
        match = _assign(uppers_prev, upper)
        inverse = {c: r for r, c in match.items()}
        ids_up = []
        for j in range(len(upper)):
            if j in inverse:
                ids_up.append(ids_prev[inverse[j]])
            else:
                ids_up.append(next_id)
                next_id += 1
        lookup = {z: t for z, t in zip(upper, ids_up)}
        track_ids.append(tuple(lookup[z] if z.imag >= 0.0 else -lookup[z.conjugate()]
                               for z in zs.zeros))
        uppers_prev, ids_prev = upper, ids_up

    crossings = _crossings(grid, sets, track_ids)
    return SweepResult(tuple(grid), tuple(sets), tuple(track_ids), crossings)


def _crossings(grid, sets, track_ids):
    out = []
    lo, hi = grid[0], grid[-1]
    n = 0
    while special_order(n) <= hi:
        nu_n = special_order(n)
        if nu_n < lo:
            n += 1
            continue
        x_n = solve_xn(n).x_n
        if nu_n not in grid:
            out.append(Crossing(nu_n, x_n, "between", True, "nu_n not on the grid"))
            n += 1
            continue
        j = grid.index(nu_n)
        real_idx = sets[j].pair_index.index(
            next(i for i, p in enumerate(sets[j].pair_index) if p == i))
        real_track = track_ids[j][real_idx]
        if j > 0:
            before = {abs(t) for t in track_ids[j - 1]}
            ok = real_track not in before
            out.append(Crossing(nu_n, x_n, "below", ok,
                                "all tracks continue into non-real zeros" if ok
                                else "a track from below ended on the real zero"))
        if j + 1 < len(grid):
            nxt = sets[j + 1]
            dists = [abs(z + x_n) for z in nxt.zeros]
            nearest = sorted(range(len(dists)), key=dists.__getitem__)[:2]
            ids_near = {abs(track_ids[j + 1][i]) for i in nearest}
            ok = ids_near == {real_track}
            out.append(Crossing(nu_n, x_n, "above", ok,
                                f"merge distance {min(dists):.3g}" if ok
                                else "real-zero track does not continue into the nearest pair"))
        n += 1
    return out
