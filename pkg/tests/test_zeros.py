import math

import mpmath as mp
import pytest

from kzeros.errors import DomainError, PolishDivergence, TrackingAmbiguity
from kzeros.reference import compare_to_reference
from kzeros.zeros import (
    CHAR_POLY,
    CHAR_POLY_POLISHED,
    HALF_ODD_POLY,
    _assign,
    characteristic_poly,
    count_zeros,
    polish,
    solve_zeros,
    sweep,
    verify_zeroset,
)


@pytest.mark.parametrize("nu,n", [(1.5, 1), (1.6, 2), (3.4, 2), (3.5, 3), (4.0, 4),
                                  (4.5, 4), (5.5, 5), (5.6, 6), (9.4, 8), (9.5, 9)])
def test_count(nu, n):
    assert count_zeros(nu) == n


def test_count_below_domain():
    with pytest.raises(DomainError) as exc:
        count_zeros(1.2)
    assert exc.value.count == 0


def test_characteristic_poly_degree():
    assert characteristic_poly(2.0).degree == 2
    assert characteristic_poly(4.2).degree == 4


def test_polish_examples():
    z, res = polish(2.5, -1.5 + 0.87j)
    assert z == pytest.approx(-1.5 + math.sqrt(3) / 2 * 1j, abs=1e-14)
    assert res <= 1e-12
    z, res = polish(3.5, -2.322)
    assert z.imag == 0.0 and z.real == pytest.approx(-2.32219, abs=1e-5) and res <= 1e-8


def test_polish_idempotent():
    z, _ = polish(4.2, -2.74 + 0.6j)
    z2, _ = polish(4.2, z)
    assert abs(z2 - z) < 1e-12


def test_polish_rejects_bad_start():
    with pytest.raises(PolishDivergence):
        polish(4.2, -0.5 + 0.5j)
    with pytest.raises(PolishDivergence):
        polish(4.2, -1.0 + 0j, on_cut=False)


@pytest.mark.parametrize("nu", [1.6, 4.2, 6.3, 9.9, 12.3])
def test_zeros_are_zeros_of_k(nu):
    for z in solve_zeros(nu).zeros:
        k = complex(mp.besselk(nu, z))
        dk = complex(mp.diff(lambda w: mp.besselk(nu, w), z))
        assert abs(k) <= 1e-12 * abs(dk) * abs(z)


def test_solve_examples():
    zs = solve_zeros(1.5)
    assert zs.zeros == (-1.0 + 0j,) and zs.method == HALF_ODD_POLY
    zs = solve_zeros(9.5)
    assert len(zs) == 5 * 2 - 1
    assert compare_to_reference(9.5, zs.zeros) <= 1e-4
    assert zs.real_zeros[0].real == pytest.approx(-6.29702, abs=1e-5)
    assert solve_zeros(4.2).method == CHAR_POLY_POLISHED
    assert solve_zeros(4.2, do_polish=False).method == CHAR_POLY


def test_ordering_and_pairs():
    zs = solve_zeros(7.5)
    ims = [abs(z.imag) for z in zs.zeros]
    assert ims == sorted(ims)
    assert zs.zeros[0].imag == 0.0 and zs.pair_index[0] == 0
    for i, z in enumerate(zs.zeros):
        j = zs.pair_index[i]
        assert zs.zeros[j] == z.conjugate()
        if z.imag:
            assert (z.imag > 0) == (i < j)


def test_guard_band_snap():
    zs = solve_zeros(3.5 + 4e-7)
    assert zs.snapped and zs.nu == 3.5 and len(zs) == 3


def test_near_special_order_spike_regime():
    x1 = 2.3221853546
    zs = solve_zeros(3.5 + 1e-5)
    near = sorted(zs.zeros, key=lambda z: abs(z + x1))[:2]
    assert all(abs(z + x1) < 1e-3 for z in near)
    assert near[0] == near[1].conjugate() and near[0].imag != 0.0


@pytest.mark.parametrize("nu", [4.2, 5.5, 9.5, 10.7])
def test_verify(nu):
    rep = verify_zeroset(solve_zeros(nu), exclusivity=True)
    assert rep.ok, rep.failures


def test_verify_reports_problems():
    zs = solve_zeros(4.2)
    broken = type(zs)(zs.nu, zs.zeros[:-1], zs.residuals[:-1], zs.method,
                      zs.pair_index[:-1], coefficients=zs.coefficients)
    rep = verify_zeroset(broken)
    assert not rep.ok
    assert {c.name for c in rep.failures} >= {"count"}


def test_exclusivity_value():
    rep = verify_zeroset(solve_zeros(4.2), exclusivity=True)
    check = next(c for c in rep.checks if c.name == "exclusivity")
    assert check.ok


def test_sweep_from_first_special_order():
    res = sweep(1.5, 3.5, 0.1)
    assert res.upper_track_counts[0] == 1 and res.upper_track_counts[-1] == 2
    zs16 = res.zero_sets[1]
    assert zs16.nu == 1.6
    assert zs16.zeros[0] == pytest.approx(-1.06356 + 0.0852232j, abs=1e-5)
    # one track from -1 continues through the conjugate-pair split
    assert set(res.track_ids[1]) == {1, -1}
    assert all(c.ok for c in res.crossings)


def test_sweep_across_nu1():
    res = sweep(3.4, 3.6, 0.01)
    assert 3.5 in res.grid
    assert len(res.zero_sets[res.grid.index(3.5)]) == 3
    last = res.zero_sets[-1]
    assert min(abs(z - (-2.3873 + 0.0864217j)) for z in last.zeros) < 1e-5
    sides = {(c.nu_n, c.side): c.ok for c in res.crossings}
    assert sides == {(3.5, "below"): True, (3.5, "above"): True}


def test_sweep_rejects_bad_range():
    with pytest.raises(DomainError):
        sweep(3.0, 2.0, 0.1)
    with pytest.raises(DomainError):
        sweep(2.0, 3.0, 0.0)


def test_sweep_parallel_is_deterministic():
    a = list(sweep(2.0, 4.0, 0.25).rows())
    b = list(sweep(2.0, 4.0, 0.25, workers=2).rows())
    assert a == b


def test_tracking_ambiguity():
    with pytest.raises(TrackingAmbiguity):
        _assign([0.0 + 1j, 1.0 + 1j], [0.5 + 1j, 0.5 + 1j])
