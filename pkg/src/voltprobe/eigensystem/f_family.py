"""Eigenvalues and eigenfunctions f_n of V_alpha.

Indices are 1-based: lambda_n = (1 - alpha) alpha^{n-1}, and the published
formula for f_{m+1} is used with m = n - 1.
"""

from __future__ import annotations

import logging
import math
from typing import overload

import numpy as np
from numpy.typing import NDArray

from voltprobe.exceptions import ParameterError
from voltprobe.models.eigen import FEigenfunction
from voltprobe.models.params import AlphaParam
from voltprobe.qseries.polynomials import PN_HARD_CAP

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


def _check_index(n: int) -> None:
    if n < 1:
        msg = f"eigenindex must be at least 1, got {n}"
        raise ParameterError(msg)


def eigenvalue(alpha: AlphaParam, n: int) -> float:
    """lambda_n = (1 - alpha) alpha^{n-1}."""
    _check_index(n)
    return (1.0 - alpha.alpha) * alpha.alpha ** (n - 1)


def eigenvalue_sum(alpha: AlphaParam, count: int) -> float:
    """Compensated sum of lambda_1..lambda_count (telescopes to 1 - alpha^count)."""
    return math.fsum(eigenvalue(alpha, n) for n in range(1, count + 1))


def f_coeffs(alpha: AlphaParam, n: int) -> FEigenfunction:
    """Log-polynomial coefficients of f_n.

    With m = n - 1, C_{m-k} = m!/(m-k)! alpha^{k(k-1)/2} (1-alpha)^k / (alpha; alpha)_k,
    generated by the ratio (m-k+1) alpha^{k-1} (1-alpha) / (1 - alpha^k).

    Raises:
        ParameterError: If n < 1 or m exceeds the factorial overflow cap.
    """
    _check_index(n)
    m = n - 1
    if m > PN_HARD_CAP:
        msg = f"f_{n} exceeds the double-precision index cap {PN_HARD_CAP + 1}"
        raise ParameterError(msg)
    a = alpha.alpha
    coeffs: list[float] = []
    c = 1.0
    for k in range(1, m + 1):
        c *= (m - k + 1) * a ** (k - 1) * (1.0 - a) / (1.0 - a**k)
        coeffs.append(c)
    return FEigenfunction(
        n=n, alpha=alpha, eigenvalue=eigenvalue(alpha, n), coeffs=tuple(coeffs)
    )


def _check_unit_interval(x: FloatArray) -> None:
    if np.any(np.isnan(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        msg = "eigenfunctions are evaluated on [0, 1] only"
        raise ParameterError(msg)


@overload
def f_eval(f: FEigenfunction, x: float) -> float: ...


@overload
def f_eval(f: FEigenfunction, x: FloatArray) -> FloatArray: ...


def f_eval(f: FEigenfunction, x: float | FloatArray) -> float | FloatArray:
    """f_n(x) = x^beta * Horner(ln x); exactly 0 at x = 0.

    Raises:
        ParameterError: If any x lies outside [0, 1].
    """
    arr = np.asarray(x, dtype=np.float64)
    _check_unit_interval(arr)
    flat = np.atleast_1d(arr)
    out = np.zeros_like(flat)
    positive = flat > 0.0
    logs = np.log(flat[positive])
    bracket = np.ones_like(logs)
    for c in f.coeffs:
        bracket = bracket * logs + c
    out[positive] = flat[positive] ** f.beta * bracket
    if np.ndim(x) == 0:
        return float(out[0])
    return out.reshape(arr.shape)
