import pytest

from kzeros.reference import compare_to_reference, reference_rows, reference_zeros, table_order
from kzeros.zeros import count_zeros, solve_zeros


def test_rows_cover_grid():
    rows = reference_rows()
    assert sorted(rows) == [round(1.5 + 0.1 * i, 1) for i in range(81)]


@pytest.mark.parametrize("nu", [1.5, 2.0, 3.5, 6.0, 9.5])
def test_counts_match(nu):
    assert len(reference_zeros(nu)) == count_zeros(nu)


def test_missing_row():
    with pytest.raises(KeyError):
        reference_zeros(10.0)


def test_table_order_matches_columns():
    zs = solve_zeros(5.5)
    cols = reference_rows()[5.5]
    for z, (re_, im) in zip(table_order(zs.zeros), cols):
        assert abs(z.real - re_) < 1e-4 and abs(z.imag - im) < 1e-4


def test_compare_counts_mismatch():
    assert compare_to_reference(2.0, [-1.0]) == float("inf")
