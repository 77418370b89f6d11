"""Verification suite: identities, special points, moment limits, coefficient
factorizations, zero continuity and table reproduction.

Every check returns a :class:`CheckResult`; :func:`run_checks` collects them
for the command-line ``check`` command and the acceptance tests.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bessel import (
    bessel_derivs,
    besseli_complex,
    besselk_complex,
    hankel_symbol,
    special_order,
)
from .coefficients import (
    c_coeffs_recurrence,
    c_factorization_residual,
    coefficient_set,
    d_factorization_residual,
    halfodd_poly,
)
from .gspecial import g, solve_xn
from .moments import moment_limit_convergence
from .reference import compare_to_reference, reference_rows
from .zeros import count_zeros, polish, solve_zeros, sweep, verify_zeroset

__all__ = ["CheckResult", "CHECKS", "QUICK", "run_checks"]

TABLE_ROWS = (1.5, 1.6, 2.0, 2.5, 3.5, 3.6, 4.0, 4.2, 5.5, 6.0, 7.5, 8.0, 9.4, 9.5)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _max_match(a, b):
    """Largest distance in the optimal matching of b onto a (len(a) >= len(b))."""
    cost = np.abs(np.subtract.outer(np.asarray(b), np.asarray(a)))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()), cols


def check_table(rows=TABLE_ROWS, tol=1e-4, time_limit=5.0):
    worst, slowest = 0.0, 0.0
    bad = []
    for nu in rows:
        t0 = time.perf_counter()
        zs = solve_zeros(nu)
        dt = time.perf_counter() - t0
        err = compare_to_reference(nu, zs.zeros)
        worst, slowest = max(worst, err), max(slowest, dt)
        if err > tol or dt > time_limit:
            bad.append(nu)
    return not bad, (f"{len(rows)} rows, max error {worst:.2e} (tol {tol:g}), "
                     f"slowest {slowest:.2f}s" + (f", failing {bad}" if bad else ""))


def check_special_points():
    table = {1: 2.32219, 2: 3.64674, 3: 4.97179, 4: 6.29702}
    errs = {0: abs(solve_xn(0).x_n - 1.0)}
    errs.update({n: abs(solve_xn(n).x_n - v) for n, v in table.items()})
    ok = errs[0] <= 1e-10 and all(errs[n] <= 1e-4 for n in table)
    return ok, f"|x_0 - 1| = {errs[0]:.1e}, max table gap n=1..4 {max(errs[n] for n in table):.1e}"


def _identity_grid():
    nus = (1.5, 2.2, 3.7, 5.5, 7.3, 9.5)
    zs = (0.4, 1.7, 6.0, 2.0 + 1.5j, -2.3 + 0.6j, -1.1 + 3.2j,
          0.5 - 4.0j, -4.5 - 1.0j, -3.0 + 5.0j, 3.0 + 3.0j)
    return [(nu, complex(z)) for nu in nus for z in zs]


def check_identities():
    grid = _identity_grid()
    wr = rk = ri = 0.0
    for nu, z in grid:
        i, k = besseli_complex(nu, z), besselk_complex(nu, z)
        di, dk = bessel_derivs(nu, z)
        wr = max(wr, abs(z * (i * dk - di * k) + 1.0))
        km, kp = besselk_complex(nu - 1, z), besselk_complex(nu + 1, z)
        im, ip = besseli_complex(nu - 1, z), besseli_complex(nu + 1, z)
        rk = max(rk, abs(km - kp + 2 * nu / z * k) / (abs(km) + abs(kp)))
        ri = max(ri, abs(im - ip - 2 * nu / z * i) / (abs(im) + abs(ip)))
    g_ok = True
    try:
        for nu in (1.6, 2.3, 3.5, 4.2, 6.75, 9.1):
            for x in (0.3, 1.0, 2.5, 4.0, 7.5):
                g(nu, x, check_forms=True)
    except ArithmeticError:
        g_ok = False
    kid = max(solve_xn(n).identity_residuals["K_alpha_x_over_pi"] for n in range(5))
    ok = wr <= 1e-9 and rk <= 1e-9 and ri <= 1e-9 and g_ok and kid <= 1e-8
    return ok, (f"{len(grid)} points: Wronskian {wr:.1e}, K recurrence {rk:.1e}, "
                f"I recurrence {ri:.1e}, G forms {'equal' if g_ok else 'DIFFER'} to 1e-10, "
                f"K alpha x/pi - 1 {kid:.1e}")


def check_moment_limits():
    deltas = (1e-1, 1e-2, 1e-3)
    parts, ok = [], True
    for n, m in ((1, 1), (2, 1), (2, 2), (2, 3)):
        target = solve_xn(n).x_n ** m
        conv = moment_limit_convergence(n, m, deltas)
        for side, errs in conv.items():
            mono = all(a > b for a, b in zip(errs, errs[1:]))
            rel = errs[-1] / target
            ok &= mono and rel <= 0.05
            parts.append(f"({n},{m},{'+' if side > 0 else '-'}) {rel:.1e}")
    return ok, "strictly decreasing; relative error at 1e-3: " + ", ".join(parts)


def check_factorizations():
    c_res = max(c_factorization_residual(n) for n in range(5))
    d_res = max(d_factorization_residual(n) for n in range(1, 5))
    closed_gap = 0.0
    for n in range(5):
        x = solve_xn(n).x_n
        nu = special_order(n)
        rec = c_coeffs_recurrence(n, x)
        for m in range(1, 2 * n + 3):
            c = hankel_symbol(nu, m) / 2.0 ** m + hankel_symbol(nu, m - 1) / 2.0 ** (m - 1) * x
            closed_gap = max(closed_gap, abs(rec[m] - c) / max(1.0, abs(c)))
    ok = c_res <= 1e-8 and d_res <= 1e-8 and closed_gap <= 1e-10
    return ok, (f"c-side {c_res:.1e} (n=0..4), d-side {d_res:.1e} (n=1..4), "
                f"c closed form vs recurrence {closed_gap:.1e}")


def _merge_distance(nu, x_n):
    zs = solve_zeros(nu)
    d = sorted(abs(z + x_n) for z in zs.zeros)
    return d[1], zs


def check_continuity(delta=1e-3, radius=0.05):
    ok, parts = True, []
    for n in (1, 2):
        nu_n = special_order(n)
        x_n = solve_xn(n).x_n
        base = solve_zeros(nu_n)
        nonreal = [z for i, z in enumerate(base.zeros) if base.pair_index[i] != i]
        below = solve_zeros(nu_n - delta)
        gap_below, _ = _max_match(nonreal, below.zeros)
        above = solve_zeros(nu_n + delta)
        near = [z for z in above.zeros if abs(z + x_n) <= radius]
        rest = [z for z in above.zeros if abs(z + x_n) > radius]
        gap_above, _ = _max_match(nonreal, rest) if rest else (0.0, None)
        merge = [_merge_distance(nu_n + d, x_n)[0] for d in (1e-1, 1e-2, 1e-3)]
        mono = all(a > b for a, b in zip(merge, merge[1:]))
        ok &= gap_below <= radius and gap_above <= radius and len(near) == 2 and mono
        parts.append(f"n={n}: below {gap_below:.1e}, above {gap_above:.1e}, "
                     f"{len(near)} near -x_n, merge {', '.join(f'{m:.1e}' for m in merge)}")
    return ok, "; ".join(parts)


def check_cross_path(delta=1e-4):
    ok, parts = True, []
    for nu in (2.5, 4.5):
        exact = solve_zeros(nu).zeros
        poly_roots = halfodd_poly(nu).roots()
        for s in (1.0, -1.0):
            raw = coefficient_set(nu + s * delta, count_zeros(nu)).characteristic().roots()
            pre, _ = _max_match(poly_roots, raw)
            polished = []
            for r in raw:
                if r.imag == 0.0:
                    r = complex(r.real, 1e-8)
                polished.append(polish(nu, r)[0])
            post, _ = _max_match(exact, polished)
            ok &= pre <= 5e-3 and post <= 1e-9
            parts.append(f"nu={nu}{'+' if s > 0 else '-'}: pre {pre:.1e}, post {post:.1e}")
    return ok, "; ".join(parts)


def check_residual_gate(gate=1e-8):
    worst, count = 0.0, 0
    for nu in sorted(set(reference_rows()) | {3.501, 3.499, 12.3}):
        rep = verify_zeroset(solve_zeros(nu))
        res = next(c for c in rep.checks if c.name == "residuals")
        worst = max(worst, res.value)
        count += count_zeros(nu)
    return worst <= gate, f"{count} zeros, max residual {worst:.1e} (gate {gate:g})"


def check_exclusivity():
    rep = verify_zeroset(solve_zeros(4.2), exclusivity=True)
    c = next(c for c in rep.checks if c.name == "exclusivity")
    return c.ok, c.detail + " (needs > 1e-3)"


def check_full_table():
    return check_table(tuple(sorted(reference_rows())))


def check_sweep():
    res = sweep(1.5, 9.5, 0.1)
    counts = res.upper_track_counts
    changes = [res.grid[i] for i in range(1, len(counts)) if counts[i] != counts[i - 1]]
    step_max = 0.0
    by_id = {}
    for nu, t, re_, im, _ in res.rows():
        if t > 0:
            prev = by_id.get(t)
            if prev is not None:
                step_max = max(step_max, abs(complex(re_, im) - prev))
            by_id[t] = complex(re_, im)
    ok = changes == [3.5, 5.5, 7.5, 9.5] and step_max <= 0.2 and all(c.ok for c in res.crossings)
    return ok, (f"track count changes at {changes}, max step {step_max:.3f}, "
                f"{sum(c.ok for c in res.crossings)}/{len(res.crossings)} crossings as expected")


CHECKS = {
    "table": check_table,
    "special_points": check_special_points,
    "identities": check_identities,
    "moment_limits": check_moment_limits,
    "factorization": check_factorizations,
    "continuity": check_continuity,
    "cross_path": check_cross_path,
    "residual_gate": check_residual_gate,
    "exclusivity": check_exclusivity,
    "full_table": check_full_table,
    "sweep": check_sweep,
}
QUICK = ("table", "special_points", "identities", "factorization", "exclusivity")


def run_checks(level: str = "quick") -> list[CheckResult]:
    """Run the quick subset or every check (``level="full"``)."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    names = QUICK if level == "quick" else tuple(CHECKS)
    out = []
    for name in names:
        t0 = time.perf_counter()
        try:
            ok, detail = CHECKS[name]()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out
