"""Closed-form eigenvalues and eigenfunctions of V_alpha and V_alpha^*."""

from voltprobe.eigensystem.f_family import eigenvalue, eigenvalue_sum, f_coeffs, f_eval
from voltprobe.eigensystem.g_family import (
    DEFAULT_G_TOL,
    G_CANCELLATION_LIMIT,
    S1_ROUNDING_BUDGET,
    g_eval,
    g_eval_bounded,
    g_terms,
    s1_check,
)

__all__ = [
    "DEFAULT_G_TOL",
    "G_CANCELLATION_LIMIT",
    "S1_ROUNDING_BUDGET",
    "eigenvalue",
    "eigenvalue_sum",
    "f_coeffs",
    "f_eval",
    "g_eval",
    "g_eval_bounded",
    "g_terms",
    "s1_check",
]
