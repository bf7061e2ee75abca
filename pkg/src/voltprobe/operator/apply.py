"""Applications of V_phi and V_alpha^* by adaptive quadrature."""

from __future__ import annotations

import math

import numpy as np

from voltprobe.exceptions import ParameterError
from voltprobe.models.operator import QuadratureSpec, SubstitutionMap
from voltprobe.models.params import AlphaParam
from voltprobe.operator.quadrature import FloatArray, Integrand, cumulative_integral, integrate

DEFAULT_QUADRATURE = QuadratureSpec()


def _check_point(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        msg = f"operators act on functions of x in [0, 1], got x={x}"
        raise ParameterError(msg)


def apply_V(
    phi: SubstitutionMap,
    f: Integrand,
    x: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """(V_phi f)(x) = int_0^{phi(x)} f(t) dt.

    Raises:
        ParameterError: If x lies outside [0, 1].
        QuadratureError: If refinement cannot meet ``quad.abs_tol``.
    """
    _check_point(x)
    value, _ = integrate(f, 0.0, phi(x), quad)
    return value


def apply_V_many(
    phi: SubstitutionMap,
    f: Integrand,
    xs: FloatArray,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FloatArray:
    """V_phi f at every point of ``xs`` in one adaptive pass."""
    return cumulative_integral(f, phi(np.asarray(xs, dtype=np.float64)), quad)


def apply_Vstar(
    alpha: AlphaParam,
    g: Integrand,
    x: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """(V_alpha^* g)(x) = int_{x^{1/alpha}}^1 g(t) dt."""
    _check_point(x)
    value, _ = integrate(g, x ** (1.0 / alpha.alpha), 1.0, quad)
    return value


def apply_Vstar_many(
    alpha: AlphaParam,
    g: Integrand,
    xs: FloatArray,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FloatArray:
    """V_alpha^* g at every point of ``xs``: I(1) - I(x^{1/alpha}) with I(p) = int_0^p g."""
    lower = np.asarray(xs, dtype=np.float64) ** (1.0 / alpha.alpha)
    cumulative = cumulative_integral(g, np.append(lower.ravel(), 1.0), quad)
    return (cumulative[-1] - cumulative[:-1]).reshape(lower.shape)


def l2_inner(u: Integrand, v: Integrand, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """<u, v> on L^2(0, 1)."""
    value, _ = integrate(lambda t: u(t) * v(t), 0.0, 1.0, quad)
    return value


def l2_norm(u: Integrand, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    return math.sqrt(max(l2_inner(u, u, quad), 0.0))
