"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, InvalidOperation

from ._backend import BACKEND
from .bessel import Precision, classify_order
from .checks import run_checks
from .errors import DomainError, KZerosError
from .gspecial import solve_xn
from .moments import moment_vector
from .reference import table_order
from .zeros import solve_zeros, sweep, verify_zeroset

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
_HALF_ODD_SNAP = 1e-12


class UsageError(Exception):
    pass


def parse_nu(text: str) -> float:
    """Decimal string to float, snapped onto a nearby half-odd integer."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise UsageError(f"not a number: {text!r}") from None
    if not value.is_finite():
        raise UsageError(f"not a finite number: {text!r}")
    twice = (2 * value).to_integral_value()
    if twice % 2 == 1 and abs(2 * value - twice) <= Decimal(2 * _HALF_ODD_SNAP):
        return float(twice) / 2.0
    return float(value)


def order_grid(start: str, stop: str, step: str) -> list[float]:
    """Inclusive grid built in decimal arithmetic, so 0.1 steps land exactly."""
    try:
        a, b, h = Decimal(start), Decimal(stop), Decimal(step)
    except InvalidOperation:
        raise UsageError("range bounds must be numbers") from None
    if h <= 0 or b < a:
        raise UsageError("empty range: need from <= to and step > 0")
    out, x = [], a
    while x <= b:
        out.append(parse_nu(str(x)))
        x += h
    return out


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _fmt_im(x: float) -> str:
    return f"{x:+.9g}"


def _fmt_res(x: float) -> str:
    return f"{x:.3e}"


def zeroset_record(zs, verify=None) -> dict:
    prec = Precision()
    mv = zs.coefficients.moments_used if zs.coefficients is not None else None
    rec = {
        "nu": zs.nu,
        "count": len(zs.zeros),
        "method": zs.method,
        "zeros": [[z.real, z.imag] for z in zs.zeros],
        "residuals": list(zs.residuals),
        "pair_index": list(zs.pair_index),
        "metadata": {
            "target_rel_tol": prec.target_rel_tol,
            "max_terms": prec.max_terms,
            "backend": BACKEND,
            "snapped": zs.snapped,
            "guard_flag": bool(mv.guard_flag) if mv is not None else False,
            "pair_gap": zs.pair_gap,
        },
    }
    if verify is not None:
        rec["verify"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in verify.checks]
    return rec


def _emit(text: str, out=None):
    (out or sys.stdout).write(text)


def cmd_zeros(args) -> int:
    nu = parse_nu(args.nu)
    zs = solve_zeros(nu)
    report = verify_zeroset(zs, exclusivity=args.verify and nu > 3.5) if args.verify else None
    if args.format == "json":
        _emit(json.dumps(zeroset_record(zs, report), indent=2) + "\n")
    else:
        lines = ["nu,zero_index,re,im,residual"]
        for i, (z, r) in enumerate(zip(zs.zeros, zs.residuals)):
            lines.append(f"{_fmt(zs.nu)},{i},{_fmt(z.real)},{_fmt_im(z.imag)},{_fmt_res(r)}")
        if report is not None:
            for c in report.checks:
                lines.append(f"# {'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}")
        _emit("\n".join(lines) + "\n")
    if report is not None and not report.ok:
        names = ", ".join(c.name for c in report.failures)
        print(f"verification failed: {names}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _solve_all(grid, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(solve_zeros, grid))
    return [solve_zeros(nu) for nu in grid]


def _table_sequence(zs):
    """Zeros in published column order, each upper member followed by its conjugate."""
    res = {z: r for z, r in zip(zs.zeros, zs.residuals)}
    out = []
    for z in table_order(zs.zeros):
        out.append((z, res[z]))
        if z.imag:
            out.append((z.conjugate(), res[z.conjugate()]))
    return out


def cmd_table(args) -> int:
    grid = order_grid(args.nu_from, args.nu_to, args.step)
    for nu in grid:
        classify_order(nu)
    sets = _solve_all(grid, args.workers)
    if args.format == "json":
        _emit(json.dumps([zeroset_record(zs) for zs in sets], indent=2) + "\n")
        return EXIT_OK
    lines = ["nu,zero_index,re,im,residual"]
    for zs in sets:
        for i, (z, r) in enumerate(_table_sequence(zs)):
            lines.append(f"{_fmt(zs.nu)},{i},{_fmt(z.real)},{_fmt_im(z.imag)},{_fmt_res(r)}")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    grid = order_grid(args.nu_from, args.nu_to, args.step)
    if len(grid) < 2:
        raise UsageError("empty range: a sweep needs at least two grid points")
    res = sweep(grid[0], grid[-1], float(Decimal(args.step)), workers=args.workers)
    lines = ["nu,track_id,re,im,residual"]
    for nu, t, re_, im, r in res.rows():
        lines.append(f"{_fmt(nu)},{t},{_fmt(re_)},{_fmt_im(im)},{_fmt_res(r)}")
    for c in res.crossings:
        lines.append(f"# crossing nu_n={_fmt(c.nu_n)} x_n={_fmt(c.x_n)} side={c.side} "
                     f"ok={c.ok} {c.detail}")
    text = "\n".join(lines) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _emit(text)
    return EXIT_OK if all(c.ok for c in res.crossings) else EXIT_NUMERIC


def cmd_xn(args) -> int:
    if args.n < 0:
        raise UsageError("n must be non-negative")
    sp = solve_xn(args.n)
    rec = {"n": sp.n, "nu_n": sp.nu_n, "x_n": sp.x_n, "alpha_n": sp.alpha_n,
           "beta_n": sp.beta_n, "identity_residuals": dict(sp.identity_residuals)}
    if args.format == "json":
        _emit(json.dumps(rec, indent=2) + "\n")
    else:
        lines = ["n,nu_n,x_n,alpha_n,beta_n",
                 f"{sp.n},{_fmt(sp.nu_n)},{sp.x_n:.15g},{_fmt(sp.alpha_n)},{_fmt(sp.beta_n)}"]
        lines += [f"# residual {k}: {v:.3e}" for k, v in sp.identity_residuals.items()]
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_moments(args) -> int:
    nu = parse_nu(args.nu)
    if args.max_k < 1:
        raise UsageError("--max-k must be at least 1")
    mv = moment_vector(nu, args.max_k)
    if args.format == "json":
        _emit(json.dumps({"nu": mv.nu, "values": list(mv.values), "abs_err": list(mv.abs_err),
                          "guard_flag": mv.guard_flag, "n_panels": mv.n_panels}, indent=2) + "\n")
    else:
        lines = ["nu,k,moment,abs_err"]
        for k, (v, e) in enumerate(zip(mv.values, mv.abs_err), start=1):
            lines.append(f"{_fmt(nu)},{k},{_fmt(v)},{_fmt_res(e)}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_checks(args.level)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.ok]
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kzeros", description="Zeros of the Macdonald function K_nu.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("zeros", help="all zeros at one order")
    sp.add_argument("--nu", required=True)
    sp.add_argument("--verify", action="store_true", help="append the verification report")
    fmt(sp)
    sp.set_defaults(func=cmd_zeros)

    for name, func, helptext, defaults in (
        ("table", cmd_table, "zeros over an order grid, table column order", ("1.5", "9.5", "0.1")),
        ("sweep", cmd_sweep, "track-labelled zeros over an order grid", (None, None, "0.05")),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--from", dest="nu_from", default=defaults[0], required=defaults[0] is None)
        sp.add_argument("--to", dest="nu_to", default=defaults[1], required=defaults[1] is None)
        sp.add_argument("--step", default=defaults[2])
        sp.add_argument("--workers", type=int, default=None)
        sp.set_defaults(func=func)
        if name == "table":
            fmt(sp)
        else:
            sp.add_argument("--out", default="-", help="CSV path (default stdout)")

    sp = sub.add_parser("xn", help="special point x_n and its identity residuals")
    sp.add_argument("--n", type=int, required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_xn)

    sp = sub.add_parser("moments", help="signed moments M_1..M_K")
    sp.add_argument("--nu", required=True)
    sp.add_argument("--max-k", type=int, default=4)
    fmt(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("check", help="run the verification suite")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KZerosError, ArithmeticError, ValueError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
