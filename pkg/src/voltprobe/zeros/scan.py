"""Exploratory sign-change scan for zeros of the adjoint eigenfunctions g_n."""

from __future__ import annotations

import logging

import numpy as np
import scipy.optimize

from voltprobe.eigensystem import g_eval, g_terms
from voltprobe.exceptions import ParameterError
from voltprobe.models.params import AlphaParam, Precision
from voltprobe.models.roots import RootDomain, RootSet

logger = logging.getLogger(__name__)

DEFAULT_SCAN_MESH = 10_000
# Slack added to the truncation bound when deciding g(1) = 0.
ENDPOINT_SLACK = 1e-8


def g_zero_scan(
    alpha: AlphaParam,
    n: int,
    mesh: int = DEFAULT_SCAN_MESH,
    precision: Precision = Precision.DOUBLE,
) -> RootSet:
    """Bracket sign changes of g_n on a uniform mesh and refine them with brentq.

    The zero at x = 1 is reported in ``endpoint_values``; interior zeros are
    counted separately. The result is exploratory and asserts nothing about
    how many zeros g_n should have.

    Raises:
        PrecisionError: Propagated when g_n is outside the precision budget.
    """
    if mesh < 2:  # noqa: PLR2004
        msg = f"scan mesh needs at least 2 cells, got {mesh}"
        raise ParameterError(msg)
    g = g_terms(alpha, n, precision=precision)
    xs = np.linspace(0.0, 1.0, mesh + 1)
    values = g_eval(g, xs)
    noise = g.truncation_error_bound + 4.0 * np.finfo(np.float64).eps * sum(
        abs(c) for c in g.coefficients
    )
    endpoint = abs(values[-1]) <= noise + ENDPOINT_SLACK
    last_cell = mesh - 1 if endpoint else mesh
    zeros: list[float] = []
    for i in range(last_cell):
        left, right = values[i], values[i + 1]
        if left == 0.0 and i > 0:
            zeros.append(float(xs[i]))
        elif left * right < 0.0:
            root = scipy.optimize.brentq(
                lambda t: g_eval(g, t, precision), xs[i], xs[i + 1], xtol=1e-15
            )
            zeros.append(float(root))
    endpoint_values: tuple[float, ...] = ()
    if endpoint:
        zeros.append(1.0)
        endpoint_values = (1.0,)
    residuals = tuple(abs(g_eval(g, x, precision)) for x in zeros)
    interior = len(zeros) - len(endpoint_values)
    logger.info(
        "g_%d scan (alpha=%s): %d interior zeros, %d at x = 1",
        n,
        alpha.alpha,
        interior,
        len(endpoint_values),
    )
    return RootSet(
        values=tuple(zeros),
        domain=RootDomain.X_DOMAIN,
        certified_real=True,
        residuals=residuals,
        exploratory=True,
        endpoint_values=endpoint_values,
        notes=(
            f"interior zeros: {interior}",
            f"endpoint zeros: {len(endpoint_values)}",
            f"conjectured count: {n}",
        ),
    )
