"""The polynomials P_n(z) = 1 + sum_k n!/(n-k)! q^{k(k+1)/2} z^k / ((q-1)...(q^k-1))."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import mpmath
from pydantic import BaseModel, ConfigDict

from voltprobe.exceptions import ParameterError
from voltprobe.models.params import QParam
from voltprobe.models.polynomial import PnPolynomial

logger = logging.getLogger(__name__)

# n!/(n-k)! overflows doubles beyond 170.
PN_HARD_CAP = 170
# Coefficient dynamic range passes 1e15 around here.
PN_SOFT_LIMIT = 60


def _check_degree(n: int) -> None:
    if n < 0:
        msg = f"polynomial degree must be non-negative, got {n}"
        raise ParameterError(msg)
    if n > PN_HARD_CAP:
        msg = f"P_{n} exceeds the double-precision degree cap {PN_HARD_CAP}"
        raise ParameterError(msg)
    if n > PN_SOFT_LIMIT:
        logger.warning(
            "P_%d coefficients span more than 15 decades; expect reduced accuracy", n
        )


def pn_coeffs(q: QParam, n: int) -> PnPolynomial:
    """Coefficients a_0..a_n of P_n by the ratio a_k / a_{k-1} = (n-k+1) q^k / (q^k - 1).

    Raises:
        ParameterError: For negative n or n above PN_HARD_CAP.
    """
    _check_degree(n)
    coeffs = [1.0]
    for k in range(1, n + 1):
        qk = q.q**k
        coeffs.append(coeffs[-1] * (n - k + 1) * qk / (qk - 1.0))
    return PnPolynomial(n=n, q=q.q, coeffs=tuple(coeffs))


def pn_coeffs_extended(q: QParam, n: int) -> list[mpmath.mpf]:
    """Same coefficients in the current mpmath working precision (no degree cap)."""
    if n < 0:
        msg = f"polynomial degree must be non-negative, got {n}"
        raise ParameterError(msg)
    q_mp = mpmath.mpf(q.q)
    coeffs = [mpmath.mpf(1)]
    for k in range(1, n + 1):
        qk = q_mp**k
        coeffs.append(coeffs[-1] * (n - k + 1) * qk / (qk - 1))
    return coeffs


def pn_eval(p: PnPolynomial, z: float) -> float:
    """Horner evaluation of P_n at z."""
    return p(z)


class IdentityDiagnostic(BaseModel):
    """Both sides of (x^n P_{n+1}(1/x))' = n x^{n-1} P_n(1/x) at sample points."""

    model_config = ConfigDict(frozen=True)

    n: int
    q: float
    points: tuple[float, ...]
    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    max_discrepancy: float


def derivative_identity_diagnostic(
    q: QParam, n: int, points: Sequence[float]
) -> IdentityDiagnostic:
    """Evaluate both sides of the derivative identity and report the gap.

    The left side, sum_k (n-k) a_k^{(n+1)} x^{n-k-1}, carries an x^{-2} term
    from a_{n+1}, so the two sides generally differ; nothing here asserts
    equality.
    """
    if n < 1:
        msg = f"the derivative identity needs n >= 1, got {n}"
        raise ParameterError(msg)
    if any(x == 0.0 for x in points):
        msg = "sample points must be non-zero"
        raise ParameterError(msg)
    upper = pn_coeffs(q, n + 1).coeffs
    lower = pn_coeffs(q, n).coeffs
    lhs = [
        sum((n - k) * a * x ** (n - k - 1) for k, a in enumerate(upper)) for x in points
    ]
    rhs = [n * sum(a * x ** (n - 1 - k) for k, a in enumerate(lower)) for x in points]
    gap = max((abs(a - b) for a, b in zip(lhs, rhs, strict=True)), default=0.0)
    return IdentityDiagnostic(
        n=n,
        q=q.q,
        points=tuple(points),
        lhs=tuple(lhs),
        rhs=tuple(rhs),
        max_discrepancy=gap,
    )
