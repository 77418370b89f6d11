"""Compiled vs pure-Python kernels.

Times the vectorized weight G_nu (the quadrature hot loop), complex K_nu and
I_nu, and an end-to-end zero solve under each backend. Run with

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from kzeros import _pykernels

try:
    from kzeros import _ckernels
except ImportError:
    _ckernels = None

TOL, TERMS = 1e-12, 500
NU = 4.2


def kernel_cases(mod):
    ys = np.linspace(0.05, 40.0, 2000)
    s, c = np.sin(np.pi * NU), np.cos(np.pi * NU)
    zs = [complex(-2.7 + 0.01 * k, 0.6 + 0.02 * k) for k in range(50)]
    return {
        "G_nu on 2000 points": lambda: mod.g_values(NU, ys, s, c, TOL, TERMS),
        "K_nu at 50 complex z": lambda: [mod.kv_right(NU, -z, TOL, TERMS) for z in zs],
        "I_nu at 50 complex z": lambda: [mod.iv_complex(NU, z, TOL, TERMS) for z in zs],
    }


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def end_to_end(pure: bool, repeat: int) -> float:
    env = dict(os.environ)
    if pure:
        env["KZEROS_PURE_PYTHON"] = "1"
    else:
        env.pop("KZEROS_PURE_PYTHON", None)
    code = ("import timeit, kzeros\n"
            f"t = min(timeit.repeat(lambda: kzeros.solve_zeros({NU}), number=1, repeat={repeat}))\n"
            "print(kzeros.BACKEND, t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'case':<28}{'python [s]':>14}{'cython [s]':>14}{'speedup':>10}")
    py_cases = kernel_cases(_pykernels)
    c_cases = kernel_cases(_ckernels) if _ckernels is not None else {}
    for name, fn in py_cases.items():
        t_py = best_of(fn, args.repeat)
        if name in c_cases:
            t_c = best_of(c_cases[name], args.repeat)
            print(f"{name:<28}{t_py:>14.3e}{t_c:>14.3e}{t_py / t_c:>10.1f}")
        else:
            print(f"{name:<28}{t_py:>14.3e}{'-':>14}{'-':>10}")

    t_py = end_to_end(True, args.repeat)
    label = f"solve_zeros({NU})"
    if _ckernels is not None:
        t_c = end_to_end(False, args.repeat)
        print(f"{label:<28}{t_py:>14.3e}{t_c:>14.3e}{t_py / t_c:>10.1f}")
    else:
        print(f"{label:<28}{t_py:>14.3e}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
