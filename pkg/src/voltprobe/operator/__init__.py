"""Quadrature applications of V_phi and V_alpha^* and eigen-residuals."""

from voltprobe.operator.apply import (
    DEFAULT_QUADRATURE,
    apply_V,
    apply_V_many,
    apply_Vstar,
    apply_Vstar_many,
    l2_inner,
    l2_norm,
)
from voltprobe.operator.quadrature import (
    IntegralEstimate,
    Integrand,
    cumulative_integral,
    gauss_legendre,
    integrate,
    integrate_segments,
)
from voltprobe.operator.residuals import DEFAULT_MESH, graded_mesh, residual_f, residual_g

__all__ = [
    "DEFAULT_MESH",
    "DEFAULT_QUADRATURE",
    "IntegralEstimate",
    "Integrand",
    "apply_V",
    "apply_V_many",
    "apply_Vstar",
    "apply_Vstar_many",
    "cumulative_integral",
    "gauss_legendre",
    "graded_mesh",
    "integrate",
    "integrate_segments",
    "l2_inner",
    "l2_norm",
    "residual_f",
    "residual_g",
]
