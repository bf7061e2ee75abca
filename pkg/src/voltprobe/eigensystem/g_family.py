"""Adjoint eigenfunctions g_n of V_alpha^* as Muntz-type q-series.

With m = n - 1,

    g_n(x) = sum_{j>=0} (-1)^j alpha^{j(j-1-2m)/2} / (alpha; alpha)_j * x^{mu_j},
    mu_j = (1 - alpha^j) / ((1 - alpha) alpha^j).

Coefficients grow like alpha^{-m^2/2} before decaying, so they are generated
in mpmath and rounded once; double-precision evaluation is refused when the
peak coefficient exceeds G_CANCELLATION_LIMIT.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import overload

import mpmath
import numpy as np
from numpy.typing import NDArray

from voltprobe.eigensystem.f_family import _check_index, _check_unit_interval, eigenvalue
from voltprobe.exceptions import ConvergenceError, ParameterError, PrecisionError
from voltprobe.models.eigen import GEigenfunction
from voltprobe.models.params import AlphaParam, Precision
from voltprobe.precision import working_precision
from voltprobe.qseries.summation import compensated_sum

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

G_CANCELLATION_LIMIT = 1e12
DEFAULT_G_TOL = 1e-17
MAX_G_TERMS = 2000
# Largest rounding error accepted from the double-precision S_1 sum.
S1_ROUNDING_BUDGET = 1e-12
# Coefficients must stay representable as doubles even in extended mode.
_DOUBLE_CEILING = 1e300


@dataclass(frozen=True)
class _AdjointSeries:
    coefficients: list[mpmath.mpf]
    exponents: list[mpmath.mpf]
    tail_bound: float
    peak: float
    dps: int


def _working_dps(alpha: float, m: int) -> int:
    # peak coefficient ~ alpha^{-m^2/2}
    decades = 0.5 * m * m * abs(math.log10(alpha))
    return 30 + math.ceil(decades)


def _adjoint_series(alpha: float, m: int, tol: float) -> _AdjointSeries:
    """Terms until past the hump (j > 2m + 1) and below ``tol``.

    The tail bound is |c_J| / (1 - r_J) with r_J = alpha^{J-m} / (1 - alpha^{J+1})
    the ratio of consecutive coefficient magnitudes, decreasing in J.
    """
    dps = _working_dps(alpha, m)
    with working_precision(dps):
        a = mpmath.mpf(alpha)
        poch = mpmath.mpf(1)
        coefficients: list[mpmath.mpf] = []
        exponents: list[mpmath.mpf] = []
        for j in range(MAX_G_TERMS):
            if j > 0:
                poch *= 1 - a**j
            c = (-1) ** j * a ** (mpmath.mpf(j * (j - 1 - 2 * m)) / 2) / poch
            ratio = a ** (j - m) / (1 - a ** (j + 1))
            if j > 2 * m + 1 and abs(c) < tol and ratio < mpmath.mpf(1) / 2:
                tail = float(abs(c) / (1 - ratio))
                peak = float(max(abs(v) for v in coefficients))
                logger.debug("adjoint series alpha=%s m=%d: %d terms", alpha, m, j)
                return _AdjointSeries(coefficients, exponents, tail, peak, dps)
            coefficients.append(c)
            exponents.append((1 - a**j) / ((1 - a) * a**j))
    msg = f"adjoint series for alpha={alpha}, m={m} did not truncate in {MAX_G_TERMS} terms"
    raise ConvergenceError(msg)


def g_terms(
    alpha: AlphaParam,
    n: int,
    tol: float = DEFAULT_G_TOL,
    precision: Precision = Precision.DOUBLE,
) -> GEigenfunction:
    """Truncated series of g_n.

    Raises:
        ParameterError: If n < 1 or tol is not positive.
        PrecisionError: If the peak coefficient exceeds G_CANCELLATION_LIMIT in
            double precision, or cannot be stored as a double at all.
    """
    _check_index(n)
    if not tol > 0.0:
        msg = f"tolerance must be positive, got {tol}"
        raise ParameterError(msg)
    series = _adjoint_series(alpha.alpha, n - 1, tol)
    if series.peak > _DOUBLE_CEILING or (
        precision is Precision.DOUBLE and series.peak > G_CANCELLATION_LIMIT
    ):
        msg = (
            f"g_{n} at alpha={alpha.alpha}: cancellation ratio {series.peak:.3e} exceeds "
            f"the {precision.value}-precision budget"
        )
        raise PrecisionError(msg)
    terms = tuple(
        (float(c), float(mu)) for c, mu in zip(series.coefficients, series.exponents, strict=True)
    )
    return GEigenfunction(
        n=n,
        alpha=alpha,
        eigenvalue=eigenvalue(alpha, n),
        terms=terms,
        truncation_error_bound=series.tail_bound,
        cancellation_ratio=max(1.0, series.peak),
        precision=precision,
    )


def _eval_extended(g: GEigenfunction, points: FloatArray) -> FloatArray:
    series = _adjoint_series(g.alpha.alpha, g.n - 1, DEFAULT_G_TOL)
    count = len(g.terms)
    out = np.empty_like(points)
    with working_precision(series.dps):
        coefficients = series.coefficients[:count]
        exponents = series.exponents[:count]
        for i, x in enumerate(points):
            x_mp = mpmath.mpf(float(x))
            terms = zip(coefficients, exponents, strict=True)
            out[i] = float(mpmath.fsum(c * x_mp**mu for c, mu in terms))
    return out


def _eval_double(g: GEigenfunction, points: FloatArray) -> FloatArray:
    coefficients = np.array(g.coefficients)
    exponents = np.array(g.exponents)
    table = coefficients[None, :] * points[:, None] ** exponents[None, :]
    return np.array([math.fsum(row) for row in table])


@overload
def g_eval(g: GEigenfunction, x: float, precision: Precision | None = None) -> float: ...


@overload
def g_eval(
    g: GEigenfunction, x: FloatArray, precision: Precision | None = None
) -> FloatArray: ...


def g_eval(
    g: GEigenfunction, x: float | FloatArray, precision: Precision | None = None
) -> float | FloatArray:
    """Evaluate the truncated series of g_n at x in [0, 1].

    ``precision`` defaults to the mode ``g`` was built for.

    Raises:
        ParameterError: If any x lies outside [0, 1].
    """
    arr = np.asarray(x, dtype=np.float64)
    _check_unit_interval(arr)
    flat = np.atleast_1d(arr).ravel()
    mode = precision or g.precision
    values = _eval_extended(g, flat) if mode is Precision.EXTENDED else _eval_double(g, flat)
    if np.ndim(x) == 0:
        return float(values[0])
    return values.reshape(arr.shape)


def g_eval_bounded(
    g: GEigenfunction, x: float, precision: Precision | None = None
) -> tuple[float, float]:
    """g_n(x) together with truncation plus rounding error bounds."""
    value = g_eval(g, x, precision)
    if (precision or g.precision) is Precision.EXTENDED:
        rounding = 2.0**-52 * abs(value)
    else:
        rounding = compensated_sum(c * x**mu for c, mu in g.terms).rounding_bound()
    return value, g.truncation_error_bound + rounding


def s1_check(alpha: AlphaParam, n: int, precision: Precision = Precision.DOUBLE) -> float:
    """S_1 = sum_{k>=1} (-1)^{k-1} alpha^{k(k-1-2n)/2} / (alpha; alpha)_k, which equals 1.

    Here n is the non-negative published index, so S_1 = 1 - g_{n+1}(1) and
    S_1 = -(F_alpha(alpha^{-n-1}) - 1).

    Double precision sums the rounded coefficients exactly; when their rounding
    alone could move the result by more than S1_ROUNDING_BUDGET, the sum is
    redone in mpmath at the working precision of the series.

    Raises:
        ParameterError: If n is negative.
    """
    if n < 0:
        msg = f"S_1 index must be non-negative, got {n}"
        raise ParameterError(msg)
    series = _adjoint_series(alpha.alpha, n, DEFAULT_G_TOL)
    if precision is Precision.DOUBLE:
        summed = compensated_sum(-float(c) for c in series.coefficients[1:])
        if summed.rounding_bound() <= S1_ROUNDING_BUDGET:
            return summed.value
        logger.debug(
            "S_1 at alpha=%s, n=%d: rounding bound %.3e, escalating to mpmath",
            alpha.alpha,
            n,
            summed.rounding_bound(),
        )
    with working_precision(series.dps):
        return float(-mpmath.fsum(series.coefficients[1:]))
