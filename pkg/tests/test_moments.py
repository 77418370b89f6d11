import mpmath as mp
import pytest

from kzeros.errors import GuardBandViolation
from kzeros.gspecial import solve_xn
from kzeros.moments import moment_limit_convergence, moment, moment_vector, nearest_special


def mp_moment(nu, k):
    def f(y):
        kk, ii = mp.besselk(nu, y), mp.besseli(nu, y)
        return y ** (k - 1) / (kk ** 2 + mp.pi ** 2 * ii * mp.besseli(-nu, y))

    with mp.workdps(25):
        return float(mp.cos(mp.pi * nu) * mp.quad(f, [0, 1, 3, 8, 20, mp.inf]))


@pytest.mark.parametrize("nu,k", [(1.6, 1), (2.0, 2), (4.2, 3), (4.2, 4), (6.8, 1)])
def test_against_mpmath(nu, k):
    val, err = moment(nu, k)
    assert val == pytest.approx(mp_moment(nu, k), rel=1e-10)
    assert err <= 1e-9 * abs(val)


def test_vector_matches_single():
    mv = moment_vector(4.2, 4)
    assert len(mv) == 4
    for k in range(1, 5):
        assert mv[k] == pytest.approx(moment(4.2, k)[0], rel=1e-11)
    with pytest.raises(IndexError):
        mv[0]


def test_half_odd_moments_vanish():
    assert moment_vector(2.5, 4).values == (0.0,) * 4
    assert moment(4.5, 2) == (0.0, 0.0)


def test_guard_band():
    with pytest.raises(GuardBandViolation):
        moment_vector(3.5 + 5e-7, 2)
    with pytest.raises(GuardBandViolation):
        moment(3.5, 1)


def test_spike_regime_flag_and_refinement():
    mv = moment_vector(3.5 + 1e-4, 4)
    assert mv.guard_flag
    assert not moment_vector(3.9, 4).guard_flag
    ref = moment_vector(3.5 + 1e-4, 4, refine=True)
    for a, b in zip(mv.values, ref.values):
        assert a == pytest.approx(b, rel=1e-9)


def test_nearest_special():
    assert nearest_special(3.6) == (1, pytest.approx(0.1))
    assert nearest_special(1.55)[0] == 0
    assert nearest_special(4.4)[0] == 1
    assert nearest_special(4.6)[0] == 2


def test_moment_limit_near_special_order():
    # M_k(nu_n + d) -> x_n^k and M_k(nu_n - d) -> -x_n^k
    x1 = solve_xn(1).x_n
    assert moment(3.5 + 1e-5, 2)[0] == pytest.approx(x1 ** 2, rel=1e-3)
    assert moment(3.5 - 1e-5, 2)[0] == pytest.approx(-x1 ** 2, rel=1e-3)


def test_moment_limit_shape():
    out = moment_limit_convergence(0, 1, [1e-1, 1e-2])
    assert set(out) == {1}
    out = moment_limit_convergence(1, 1, [1e-1, 1e-2])
    assert set(out) == {1, -1} and out[1][1] < out[1][0]
    with pytest.raises(ValueError):
        moment_limit_convergence(1, 1, [1e-7])
