"""Zeros of f_n and P_n, interlacing, and the exploratory g_n scan."""

from voltprobe.zeros.roots import (
    IMAG_TOL,
    RESIDUAL_TOL,
    TIE_TOL,
    check_interlace,
    f_zeros,
    pn_roots,
)
from voltprobe.zeros.scan import DEFAULT_SCAN_MESH, g_zero_scan

__all__ = [
    "DEFAULT_SCAN_MESH",
    "IMAG_TOL",
    "RESIDUAL_TOL",
    "TIE_TOL",
    "check_interlace",
    "f_zeros",
    "g_zero_scan",
    "pn_roots",
]
