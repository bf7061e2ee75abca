"""q-Pochhammer products and the entire function F_q.

F_q(z) = prod_{k>=1} (1 - q^k z) = 1 + sum_k q^{k(k+1)/2} z^k / ((q-1)...(q^k-1)).
"""

from __future__ import annotations

import logging
import math

import mpmath

from voltprobe.exceptions import ParameterError
from voltprobe.models.params import AlphaParam, Precision, QParam
from voltprobe.precision import working_precision
from voltprobe.qseries.summation import EPS, compensated_sum

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-16
# Relative budget for the double-precision sum before switching to mpmath.
SERIES_ROUNDING_BUDGET = 1e-14
# Safety net only; the tail bounds end every loop far earlier for |q| < 1.
MAX_TERMS = 100_000


def _check_tol(tol: float) -> None:
    if not tol > 0.0:
        msg = f"tolerance must be positive, got {tol}"
        raise ParameterError(msg)


def qpoch(q: QParam, k: int) -> float:
    """(q; q)_k = prod_{j=1..k} (1 - q^j); 1 for k = 0.

    Raises:
        ParameterError: If k is negative.
    """
    if k < 0:
        msg = f"q-Pochhammer length must be non-negative, got {k}"
        raise ParameterError(msg)
    return math.prod(1.0 - q.q**j for j in range(1, k + 1))


def fq_product(q: QParam, z: float, tol: float = DEFAULT_TOL) -> float:
    """F_q(z) as a truncated product.

    The product stops once the geometric tail |q|^{K+1} |z| / (1 - |q|), which
    bounds the relative change from the neglected factors, drops below ``tol``.
    An exactly vanishing factor returns 0.
    """
    _check_tol(tol)
    qv = q.q
    if z == 0.0 or qv == 0.0:
        return 1.0
    result = 1.0
    for k in range(1, MAX_TERMS):
        factor = 1.0 - qv**k * z
        if factor == 0.0:
            return 0.0
        result *= factor
        if abs(qv) ** (k + 1) * abs(z) / (1.0 - abs(qv)) < tol:
            logger.debug("fq_product(q=%s, z=%s) truncated after %d factors", qv, z, k)
            break
    return result


def _series_terms(qv: float, z: float, tol: float) -> list[float]:
    """Terms t_0 = 1, t_k = t_{k-1} q^k z / (q^k - 1), up to the truncation index.

    Truncation waits until the term ratio is below 1/2 (past the hump) and the
    term is below ``tol`` times the running magnitude.
    """
    terms = [1.0]
    term = 1.0
    running = 1.0
    for k in range(1, MAX_TERMS):
        qk = qv**k
        denom = qk - 1.0
        term *= qk * z / denom
        terms.append(term)
        running += term
        if abs(qk * z) < 0.5 * abs(denom) and abs(term) < tol * max(1.0, abs(running)):
            break
    return terms


def _series_extended(qv: float, z: float, tol: float, peak: float) -> float:
    dps = 20 + max(0, math.ceil(math.log10(max(peak, 1.0))))
    with working_precision(dps):
        q_mp = mpmath.mpf(qv)
        z_mp = mpmath.mpf(z)
        terms = [mpmath.mpf(1)]
        term = mpmath.mpf(1)
        running = mpmath.mpf(1)
        for k in range(1, MAX_TERMS):
            qk = q_mp**k
            denom = qk - 1
            term *= qk * z_mp / denom
            terms.append(term)
            running += term
            if abs(qk * z_mp) < abs(denom) / 2 and abs(term) < tol * max(1, abs(running)):
                break
        return float(mpmath.fsum(terms))


def fq_series(
    q: QParam,
    z: float,
    tol: float = DEFAULT_TOL,
    precision: Precision = Precision.DOUBLE,
) -> float:
    """F_q(z) from its Maclaurin series.

    Double precision sums with ``math.fsum``. When the peak term times the
    recursion length predicts more rounding than SERIES_ROUNDING_BUDGET allows
    relative to the result, the sum is redone in mpmath at a working precision
    sized from the peak term.
    """
    _check_tol(tol)
    terms = _series_terms(q.q, z, tol)
    summed = compensated_sum(terms)
    if precision is Precision.EXTENDED:
        return _series_extended(q.q, z, tol, summed.peak)
    predicted = summed.count * EPS * summed.peak
    if predicted > SERIES_ROUNDING_BUDGET * (1.0 + abs(summed.value)):
        logger.debug(
            "fq_series(q=%s, z=%s): peak term %.3e, escalating to mpmath",
            q.q,
            z,
            summed.peak,
        )
        return _series_extended(q.q, z, tol, summed.peak)
    return summed.value


def fq_series_coeff(q: QParam, k: int) -> float:
    """k-th Maclaurin coefficient of F_q: prod_{j=1..k} q^j / (q^j - 1)."""
    if k < 0:
        msg = f"coefficient index must be non-negative, got {k}"
        raise ParameterError(msg)
    return math.prod(q.q**j / (q.q**j - 1.0) for j in range(1, k + 1))


def fq_root_check(alpha: AlphaParam, n: int) -> float:
    """F_alpha(alpha^{-n-1}), which vanishes because factor k = n + 1 is 1 - 1.

    The shift is folded into each power (1 - alpha^{k-n-1}) so the vanishing
    factor is formed exactly instead of through a rounded alpha^{-n-1}; the
    factors past k = n + 1 cannot revive a zero product and are not formed.
    """
    if n < 0:
        msg = f"root-check index must be non-negative, got {n}"
        raise ParameterError(msg)
    a = alpha.alpha
    result = 1.0
    for k in range(1, n + 2):
        factor = 1.0 - a ** (k - n - 1)
        if factor == 0.0:
            logger.debug("fq_root_check(alpha=%s, n=%d): factor %d vanishes", a, n, k)
            return 0.0
        result *= factor
    return result
