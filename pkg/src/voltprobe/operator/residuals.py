"""Relative L^2 eigen-residuals of f_n under V_alpha and g_n under V_alpha^*."""

from __future__ import annotations

import logging
import math

import numpy as np

from voltprobe.eigensystem import f_coeffs, f_eval, g_eval, g_terms
from voltprobe.models.operator import QuadratureSpec, SubstitutionMap
from voltprobe.models.params import AlphaParam, Precision
from voltprobe.operator.apply import DEFAULT_QUADRATURE, apply_Vstar_many, apply_V_many
from voltprobe.operator.quadrature import FloatArray

logger = logging.getLogger(__name__)

DEFAULT_MESH = 400


def graded_mesh(size: int, grading_exponent: float) -> tuple[FloatArray, FloatArray]:
    """Nodes (i / size)^gamma, i = 0..size, with trapezoid weights."""
    i = np.arange(size + 1, dtype=np.float64)
    nodes = (i / size) ** grading_exponent
    nodes[-1] = 1.0
    widths = np.diff(nodes)
    weights = np.zeros_like(nodes)
    weights[:-1] += 0.5 * widths
    weights[1:] += 0.5 * widths
    return nodes, weights


def _relative_norm(residual: FloatArray, reference: FloatArray, weights: FloatArray) -> float:
    numerator = math.sqrt(math.fsum(weights * residual**2))
    denominator = math.sqrt(math.fsum(weights * reference**2))
    return numerator / denominator


def residual_f(
    alpha: AlphaParam,
    n: int,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    mesh: int = DEFAULT_MESH,
) -> float:
    """||V_alpha f_n - lambda_n f_n|| / ||f_n|| on a graded mesh.

    Raises:
        QuadratureError: Propagated from the operator application.
    """
    f = f_coeffs(alpha, n)
    nodes, weights = graded_mesh(mesh, quad.grading_exponent)
    image = apply_V_many(SubstitutionMap.power(alpha.alpha), lambda t: f_eval(f, t), nodes, quad)
    values = f_eval(f, nodes)
    residual = _relative_norm(image - f.eigenvalue * values, values, weights)
    logger.debug("residual_f(alpha=%s, n=%d) = %.3e", alpha.alpha, n, residual)
    return residual


def residual_g(
    alpha: AlphaParam,
    n: int,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    mesh: int = DEFAULT_MESH,
    precision: Precision = Precision.DOUBLE,
) -> float:
    """||V_alpha^* g_n - lambda_n g_n|| / ||g_n|| on a graded mesh.

    Raises:
        PrecisionError: If g_n is outside the double-precision budget.
        QuadratureError: Propagated from the operator application.
    """
    g = g_terms(alpha, n, precision=precision)
    nodes, weights = graded_mesh(mesh, quad.grading_exponent)
    image = apply_Vstar_many(alpha, lambda t: g_eval(g, t), nodes, quad)
    values = g_eval(g, nodes)
    residual = _relative_norm(image - g.eigenvalue * values, values, weights)
    logger.debug("residual_g(alpha=%s, n=%d) = %.3e", alpha.alpha, n, residual)
    return residual
