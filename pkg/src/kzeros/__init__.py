"""Zeros of the Macdonald function K_nu for real order nu >= 3/2."""
from ._backend import BACKEND
from .bessel import (
    Precision,
    besseli_complex,
    besseli_real,
    besselk_complex,
    besselk_neg_axis,
    besselk_real,
    classify_order,
    special_order,
)
from .coefficients import alpha_coeffs, c_coeffs, coefficient_set, d_coeffs, halfodd_poly
from .errors import (
    BranchCut,
    DomainError,
    GuardBandViolation,
    KZerosError,
    PolishDivergence,
    TrackingAmbiguity,
)
from .gspecial import SpecialPoint, g, solve_xn, special_points
from .moments import MomentVector, moment, moment_vector
from .zeros import (
    SweepResult,
    ZeroSet,
    characteristic_poly,
    count_zeros,
    polish,
    solve_zeros,
    sweep,
    verify_zeroset,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Precision",
    "besseli_real",
    "besseli_complex",
    "besselk_real",
    "besselk_complex",
    "besselk_neg_axis",
    "classify_order",
    "special_order",
    "alpha_coeffs",
    "c_coeffs",
    "d_coeffs",
    "coefficient_set",
    "halfodd_poly",
    "KZerosError",
    "DomainError",
    "BranchCut",
    "GuardBandViolation",
    "PolishDivergence",
    "TrackingAmbiguity",
    "SpecialPoint",
    "g",
    "solve_xn",
    "special_points",
    "MomentVector",
    "moment",
    "moment_vector",
    "ZeroSet",
    "SweepResult",
    "count_zeros",
    "characteristic_poly",
    "polish",
    "solve_zeros",
    "sweep",
    "verify_zeroset",
]
