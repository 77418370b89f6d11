"""The compiled kernels and the pure-Python fallback agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from kzeros import _pykernels

ck = pytest.importorskip("kzeros._ckernels")

TOL, TERMS = 1e-12, 500


@pytest.mark.parametrize("nu", [-2.5, 0.0, 1.5, 2.2, 4.0, 7.3])
@pytest.mark.parametrize("x", [0.05, 1.0, 3.3, 12.0, 60.0])
def test_real_kernels(nu, x):
    for name in ("kv_real", "iv_real"):
        a = getattr(ck, name)(nu, x, TOL, TERMS)
        b = getattr(_pykernels, name)(nu, x, TOL, TERMS)
        assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.parametrize("nu", [1.5, 3.6, 8.0])
@pytest.mark.parametrize("z", [0.5 + 0.5j, 2 + 3j, 1.2 - 0.4j, 0.1 + 6j])
def test_complex_kernels(nu, z):
    assert abs(ck.kv_right(nu, z, TOL, TERMS) - _pykernels.kv_right(nu, z, TOL, TERMS)) \
        <= 1e-13 * abs(_pykernels.kv_right(nu, z, TOL, TERMS))
    ref = _pykernels.iv_complex(nu, z, TOL, TERMS)
    assert abs(ck.iv_complex(nu, z, TOL, TERMS) - ref) <= 1e-10 * abs(ref)


def test_g_values():
    ys = np.linspace(0.01, 30.0, 500)
    nu = 4.2
    s, c = np.sin(np.pi * nu), np.cos(np.pi * nu)
    a = ck.g_values(nu, ys, s, c, TOL, TERMS)
    b = _pykernels.g_values(nu, ys, s, c, TOL, TERMS)
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_fallback_selected_by_env():
    env = dict(os.environ, KZEROS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import kzeros; print(kzeros.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_same_zeros_under_both_backends():
    code = "import kzeros; print(repr(kzeros.solve_zeros(4.2).zeros))"
    outs = []
    for pure in ("0", "1"):
        env = dict(os.environ, KZEROS_PURE_PYTHON=pure)
        outs.append(eval(subprocess.run([sys.executable, "-c", code], env=env,
                                        capture_output=True, text=True, check=True).stdout))
    assert max(abs(a - b) for a, b in zip(*outs)) <= 1e-12
