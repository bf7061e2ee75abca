"""Adaptive graded-panel Gauss-Legendre quadrature.

Every segment is integrated with an order-p rule and with the same rule on
its two halves; the difference is the error estimate. Segments that miss
their share of the tolerance are halved, all of them in one vectorized pass
per level, so integrands are always called with arrays.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from voltprobe.exceptions import ParameterError, QuadratureError
from voltprobe.models.operator import QuadratureSpec

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
Integrand = Callable[[FloatArray], FloatArray]


@dataclass(frozen=True)
class IntegralEstimate:
    """Integrals over a batch of segments plus the accepted error estimate."""

    values: FloatArray
    error: float
    evaluations: int


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> tuple[FloatArray, FloatArray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _apply_rule(
    f: Integrand, lo: FloatArray, hi: FloatArray, order: int
) -> tuple[FloatArray, FloatArray]:
    """Order-p rule on every [lo_i, hi_i]: (integral of f, integral of |f|)."""
    nodes, weights = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    centre = 0.5 * (hi + lo)
    points = centre[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(f(points.ravel()), dtype=np.float64).reshape(points.shape)
    integral = half * (values @ weights)
    magnitude = half * (np.abs(values) @ weights)
    return integral, magnitude


def integrate_segments(
    f: Integrand, lo: FloatArray, hi: FloatArray, quad: QuadratureSpec
) -> IntegralEstimate:
    """Integrate ``f`` over each [lo_i, hi_i] to the tolerance in ``quad``.

    A segment of width w is accepted when its estimate is at most
    abs_tol * max(w, 1/max_panels) + rel_tol * int|f|.

    Raises:
        QuadratureError: If the refinement depth or panel budget is exhausted,
            or the integrand produces non-finite values.
    """
    totals = np.zeros(lo.shape, dtype=np.float64)
    owner = np.flatnonzero(hi > lo)
    a = lo[owner].astype(np.float64)
    b = hi[owner].astype(np.float64)
    coarse, _ = _apply_rule(f, a, b, quad.panel_order)
    floor = 1.0 / quad.max_panels
    error = 0.0
    evaluations = a.size
    for depth in range(quad.max_depth + 1):
        if owner.size == 0:
            return IntegralEstimate(values=totals, error=error, evaluations=evaluations)
        if owner.size > quad.max_panels:
            msg = f"quadrature needs {owner.size} active panels, budget is {quad.max_panels}"
            raise QuadratureError(msg)
        mid = 0.5 * (a + b)
        left, left_abs = _apply_rule(f, a, mid, quad.panel_order)
        right, right_abs = _apply_rule(f, mid, b, quad.panel_order)
        evaluations += 2 * a.size
        fine = left + right
        estimate = np.abs(fine - coarse)
        if not np.all(np.isfinite(estimate)):
            msg = "integrand returned non-finite values"
            raise QuadratureError(msg)
        budget = quad.abs_tol * np.maximum(b - a, floor) + quad.rel_tol * (left_abs + right_abs)
        # segments too narrow to split are accepted as they are
        done = (estimate <= budget) | (mid <= a) | (mid >= b)
        np.add.at(totals, owner[done], fine[done])
        error += float(estimate[done].sum())
        keep = ~done
        if depth > 0 and np.any(keep):
            logger.debug("quadrature depth %d: refining %d segments", depth, int(keep.sum()))
        owner = np.concatenate([owner[keep], owner[keep]])
        a, b = np.concatenate([a[keep], mid[keep]]), np.concatenate([mid[keep], b[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    if owner.size == 0:
        return IntegralEstimate(values=totals, error=error, evaluations=evaluations)
    msg = f"quadrature did not converge within depth {quad.max_depth}"
    raise QuadratureError(msg)


def _cuts(quad: QuadratureSpec, extra: FloatArray) -> FloatArray:
    return np.unique(np.concatenate([quad.breakpoints(), extra]))


def integrate(f: Integrand, a: float, b: float, quad: QuadratureSpec) -> tuple[float, float]:
    """int_a^b f for 0 <= a <= b <= 1 on the graded panels, limits inserted exactly.

    Returns:
        (value, error estimate).
    """
    if not 0.0 <= a <= b <= 1.0:
        msg = f"integration limits must satisfy 0 <= a <= b <= 1, got [{a}, {b}]"
        raise ParameterError(msg)
    cuts = _cuts(quad, np.array([a, b]))
    cuts = cuts[(cuts >= a) & (cuts <= b)]
    if cuts.size < 2:  # noqa: PLR2004
        return 0.0, 0.0
    result = integrate_segments(f, cuts[:-1], cuts[1:], quad)
    return math.fsum(result.values), result.error


def cumulative_integral(f: Integrand, points: FloatArray, quad: QuadratureSpec) -> FloatArray:
    """int_0^p f for every p in ``points`` from one adaptive pass.

    Each point becomes a panel cut, so every upper limit is honoured exactly.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.size and (np.any(points < 0.0) or np.any(points > 1.0)):
        msg = "cumulative integration points must lie in [0, 1]"
        raise ParameterError(msg)
    cuts = _cuts(quad, points.ravel())
    result = integrate_segments(f, cuts[:-1], cuts[1:], quad)
    prefix = np.concatenate([[0.0], np.cumsum(result.values)])
    logger.debug(
        "cumulative integral over %d cuts: error %.3e, %d panel evaluations",
        cuts.size,
        result.error,
        result.evaluations,
    )
    return prefix[np.searchsorted(cuts, points)]
