"""Real zeros of P_n and f_n, and the interlacing check.

Roots come from the eigenvalues of a scaled companion matrix, are polished by
Newton steps in mpmath and then certified: imaginary parts below IMAG_TOL
times the largest root, positive real parts, and scaled residuals
|P(r)| / sum |a_k| |r|^k below RESIDUAL_TOL.
"""

from __future__ import annotations

import logging
import math

import mpmath
import numpy as np
import scipy.linalg

from voltprobe.exceptions import CertificationError, ConvergenceError, ParameterError
from voltprobe.models.params import AlphaParam, QParam
from voltprobe.models.roots import RootDomain, RootSet
from voltprobe.precision import working_precision
from voltprobe.qseries.polynomials import pn_coeffs_extended

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-9
RESIDUAL_TOL = 1e-9
TIE_TOL = 1e-12
NEWTON_STEPS = 5


def _working_dps(q: float, n: int) -> int:
    # coefficients span about q^{-n^2/2}; keep every one of them exact-ish
    return 40 + math.ceil(0.5 * n * (n + 1) * abs(math.log10(q)))


def _companion_candidates(coeffs: list[mpmath.mpf]) -> list[mpmath.mpc] | None:
    """Double-precision companion eigenvalues after scaling z = s w, s = |a_0/a_n|^{1/n}."""
    n = len(coeffs) - 1
    scale = abs(coeffs[0] / coeffs[-1]) ** (mpmath.mpf(1) / n)
    lead = coeffs[-1] * scale**n
    scaled = np.array([float(a * scale**k / lead) for k, a in enumerate(coeffs)])
    if not np.all(np.isfinite(scaled)):
        return None
    companion = np.polynomial.polynomial.polycompanion(scaled)
    try:
        eigen = scipy.linalg.eigvals(companion)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(eigen)):
        return None
    return [scale * mpmath.mpc(complex(w)) for w in eigen]


def _newton_polish(coeffs_high: list[mpmath.mpf], z: mpmath.mpc) -> mpmath.mpc:
    for _ in range(NEWTON_STEPS):
        p, dp = mpmath.polyval(coeffs_high, z, derivative=True)
        if dp == 0:
            break
        step = p / dp
        z -= step
        if abs(step) <= mpmath.mp.eps * 16 * abs(z):
            break
    return z


def _scaled_residual(coeffs: list[mpmath.mpf], r: mpmath.mpf) -> float:
    value = mpmath.polyval(coeffs[::-1], r)
    scale = mpmath.fsum(abs(a) * abs(r) ** k for k, a in enumerate(coeffs))
    return float(abs(value) / scale)


def _certify(
    coeffs: list[mpmath.mpf], candidates: list[mpmath.mpc]
) -> tuple[list[mpmath.mpf], list[float], bool]:
    polished = [_newton_polish(coeffs[::-1], mpmath.mpc(z)) for z in candidates]
    polished.sort(key=lambda z: (mpmath.re(z), mpmath.im(z)))
    largest = max(abs(z) for z in polished)
    real = [mpmath.re(z) for z in polished]
    residuals = [_scaled_residual(coeffs, r) for r in real]
    certified = (
        all(abs(mpmath.im(z)) < IMAG_TOL * largest for z in polished)
        and all(r > 0 for r in real)
        and all(res < RESIDUAL_TOL for res in residuals)
        and all(b > a for a, b in zip(real, real[1:], strict=False))
    )
    return real, residuals, certified


def _pn_roots_extended(q: QParam, n: int) -> tuple[list[mpmath.mpf], list[float], bool, int]:
    dps = _working_dps(q.q, n)
    with working_precision(dps):
        coeffs = pn_coeffs_extended(q, n)
        candidates = _companion_candidates(coeffs)
        certified = False
        if candidates is not None:
            real, residuals, certified = _certify(coeffs, candidates)
        if not certified:
            logger.info("P_%d(q=%s): companion roots not certified, using polyroots", n, q.q)
            try:
                fallback = mpmath.polyroots(coeffs[::-1], maxsteps=400, extraprec=dps)
            except mpmath.libmp.NoConvergence as e:
                if candidates is None:
                    msg = f"no root iteration converged for P_{n}(q={q.q})"
                    raise ConvergenceError(msg) from e
                logger.warning("P_%d(q=%s): polyroots did not converge", n, q.q)
            else:
                real, residuals, certified = _certify(coeffs, list(fallback))
        return real, residuals, certified, dps


def pn_roots(q: QParam, n: int) -> RootSet:
    """All n roots of P_n for q in (0, 1), certified real and positive.

    A certification failure is reported through ``certified_real`` with
    every root kept (real parts), never by dropping roots.
    """
    if not 0.0 < q.q < 1.0:
        msg = f"root work needs q in (0, 1), got {q.q}"
        raise ParameterError(msg)
    if n < 0:
        msg = f"polynomial degree must be non-negative, got {n}"
        raise ParameterError(msg)
    if n == 0:
        return RootSet(values=(), domain=RootDomain.Z_DOMAIN, certified_real=True, residuals=())
    real, residuals, certified, _ = _pn_roots_extended(q, n)
    notes: tuple[str, ...] = ()
    if not certified:
        logger.warning("P_%d(q=%s): roots failed real certification", n, q.q)
        notes = ("roots failed real certification",)
    return RootSet(
        values=tuple(float(r) for r in real),
        domain=RootDomain.Z_DOMAIN,
        certified_real=certified,
        residuals=tuple(residuals),
        notes=notes,
    )


def f_zeros(alpha: AlphaParam, n: int) -> RootSet:
    """Zeros of f_n in [0, 1]: {0} and exp(-(1 - alpha) / (alpha z)) for the roots z of P_{n-1}.

    The bracket of f_n equals (ln x)^{n-1} P_{n-1}(-(1 - alpha) / (alpha ln x)) with
    q = alpha, so the scaled residual of a mapped zero equals that of its root.

    Raises:
        ParameterError: If n < 1.
        CertificationError: If the P_{n-1} roots are not certified real, or two
            zeros coincide in double precision.
    """
    if n < 1:
        msg = f"eigenindex must be at least 1, got {n}"
        raise ParameterError(msg)
    if n == 1:
        return RootSet(
            values=(0.0,), domain=RootDomain.X_DOMAIN, certified_real=True, residuals=(0.0,)
        )
    m = n - 1
    real, residuals, certified, dps = _pn_roots_extended(alpha.as_q(), m)
    if not certified:
        msg = f"zeros of f_{n} at alpha={alpha.alpha}: P_{m} roots not certified real"
        raise CertificationError(msg)
    with working_precision(dps):
        c = (1 - mpmath.mpf(alpha.alpha)) / mpmath.mpf(alpha.alpha)
        mapped = [float(mpmath.exp(-c / z)) for z in real]
    values = (0.0, *mapped)
    if any(b <= a for a, b in zip(values, values[1:], strict=False)) or values[-1] >= 1.0:
        msg = f"zeros of f_{n} at alpha={alpha.alpha} collide in double precision"
        raise CertificationError(msg)
    return RootSet(
        values=values,
        domain=RootDomain.X_DOMAIN,
        certified_real=True,
        residuals=(0.0, *residuals),
    )


def _is_tie(u: float, v: float) -> bool:
    return abs(u - v) <= TIE_TOL * max(abs(u), abs(v), math.ulp(0.0))


def check_interlace(a: RootSet, b: RootSet) -> bool:
    """Whether b_1 < a_1 < b_2 < ... < a_k < b_{k+1} strictly.

    A zero at x = 0 shared by both sets is left out of the comparison. Values
    within TIE_TOL (relative) of each other count as failures.

    Raises:
        ParameterError: On domain mismatch or if |b| != |a| + 1.
    """
    if a.domain is not b.domain:
        msg = f"cannot interlace {a.domain.value} with {b.domain.value}"
        raise ParameterError(msg)
    first, second = list(a.values), list(b.values)
    if (
        a.domain is RootDomain.X_DOMAIN
        and first
        and second
        and first[0] == 0.0
        and second[0] == 0.0
    ):
        logger.info("shared zero at x = 0 excluded from the interlacing comparison")
        first, second = first[1:], second[1:]
    if len(second) != len(first) + 1:
        msg = f"interlacing needs |b| = |a| + 1, got |a|={len(first)}, |b|={len(second)}"
        raise ParameterError(msg)
    merged = [second[0]]
    for inner, outer in zip(first, second[1:], strict=True):
        merged.extend([inner, outer])
    for left, right in zip(merged, merged[1:], strict=False):
        if _is_tie(left, right):
            logger.warning("interlacing tie between %r and %r needs manual review", left, right)
            return False
        if not left < right:
            return False
    return True
