"""Published reference values for the zeros of K_nu, nu = 1.5 .. 9.5.

Each row lists one entry per conjugate pair (upper member) or real zero, in
the published column order: decreasing imaginary part.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = ["reference_rows", "reference_zeros", "table_order", "compare_to_reference"]


@lru_cache(maxsize=1)
def reference_rows() -> dict[float, tuple]:
    """{nu: ((re, im), ...)} with one entry per table column."""
    text = resources.files("kzeros").joinpath("data/reference_zeros.json").read_text()
    return {row["nu"]: tuple(tuple(c) for c in row["columns"]) for row in json.loads(text)}


def reference_zeros(nu: float) -> list[complex]:
    """All tabulated zeros at ``nu``, conjugates included."""
    try:
        cols = reference_rows()[round(nu, 1)]
    except KeyError:
        raise KeyError(f"no reference row for nu={nu}") from None
    out = []
    for re_, im in cols:
        out.append(complex(re_, im))
        if im:
            out.append(complex(re_, -im))
    return out


def table_order(zeros) -> list[complex]:
    """Upper-half-plane and real zeros in published column order."""
    upper = [complex(z) for z in zeros if complex(z).imag >= 0.0]
    return sorted(upper, key=lambda z: (-z.imag, z.real))


def compare_to_reference(nu: float, zeros) -> float:
    """Largest componentwise deviation after optimal matching to the table.

    Returns ``inf`` when the zero counts differ.
    """
    ref = np.asarray(reference_zeros(nu))
    got = np.asarray(list(zeros), dtype=complex)
    if len(ref) != len(got):
        return float("inf")
    diff = np.subtract.outer(got, ref)
    cost = np.maximum(np.abs(diff.real), np.abs(diff.imag))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
