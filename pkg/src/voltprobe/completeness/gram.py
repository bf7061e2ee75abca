"""Distances from a witness function to spans of eigenfunctions.

Gram matrices come from adaptive L^2 inner products, are scaled to unit
diagonal and solved by column-pivoted QR with rank truncation. Each distance
is the integrated norm of the actual residual, not ||w||^2 - b^T c.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import mpmath
import numpy as np
import scipy.linalg

from voltprobe.eigensystem import f_coeffs, f_eval, g_eval, g_terms
from voltprobe.exceptions import ParameterError, PrecisionError
from voltprobe.models.completeness import FamilyKind, GramReport
from voltprobe.models.operator import QuadratureSpec
from voltprobe.models.params import AlphaParam, Precision
from voltprobe.operator import DEFAULT_QUADRATURE, Integrand, integrate, l2_inner
from voltprobe.operator.quadrature import FloatArray
from voltprobe.precision import working_precision

logger = logging.getLogger(__name__)

# Family size caps in double precision.
F_FAMILY_CAP = 16
G_FAMILY_CAP = 8
# Caps once the extended path is allowed.
F_FAMILY_EXTENDED_CAP = 40
G_FAMILY_EXTENDED_CAP = 12
GRAM_CONDITION_LIMIT = 1e15
RANK_TOL = 1e-13
_EXTENDED_DPS = 40


def unit_witness(t: FloatArray) -> FloatArray:
    """The constant function 1."""
    return np.ones_like(t)


def sqrt_witness(t: FloatArray) -> FloatArray:
    """x^{1/2}, whose exponent is not among the adjoint exponents."""
    return np.sqrt(t)


def family_members(
    family: FamilyKind, alpha: AlphaParam, count: int, precision: Precision = Precision.DOUBLE
) -> list[Integrand]:
    """Vectorized callables for the first ``count`` members of a family.

    Raises:
        ParameterError: If ``count`` exceeds the family cap for ``precision``.
    """
    extended = precision is Precision.EXTENDED
    if family is FamilyKind.F_FAMILY:
        cap = F_FAMILY_EXTENDED_CAP if extended else F_FAMILY_CAP
    else:
        cap = G_FAMILY_EXTENDED_CAP if extended else G_FAMILY_CAP
    if not 1 <= count <= cap:
        msg = f"{family.value} size must lie in [1, {cap}] in {precision.value} precision"
        raise ParameterError(msg)
    members: list[Integrand] = []
    for n in range(1, count + 1):
        if family is FamilyKind.F_FAMILY:
            f = f_coeffs(alpha, n)
            members.append(lambda t, f=f: f_eval(f, t))
        else:
            g = g_terms(alpha, n, precision=precision)
            members.append(lambda t, g=g: g_eval(g, t))
    return members


def _gram(members: list[Integrand], quad: QuadratureSpec) -> FloatArray:
    size = len(members)
    gram = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            gram[i, j] = gram[j, i] = l2_inner(members[i], members[j], quad)
    return gram


def _solve_pivoted(gram: FloatArray, rhs: FloatArray) -> tuple[FloatArray, int]:
    """Least-squares solve of a unit-diagonal Gram system, truncating small pivots."""
    q, r, perm = scipy.linalg.qr(gram, pivoting=True)
    pivots = np.abs(np.diag(r))
    rank = int(np.sum(pivots > RANK_TOL * pivots[0]))
    reduced = scipy.linalg.solve_triangular(r[:rank, :rank], (q.T @ rhs)[:rank])
    solution = np.zeros_like(rhs)
    solution[perm[:rank]] = reduced
    return solution, rank


def _solve_extended(gram: FloatArray, rhs: FloatArray) -> tuple[FloatArray, int]:
    with working_precision(_EXTENDED_DPS):
        solution, _ = mpmath.qr_solve(mpmath.matrix(gram.tolist()), mpmath.matrix(rhs.tolist()))
        return np.array([float(v) for v in solution]), gram.shape[0]


def _combination(witness: Integrand, members: list[Integrand], coeffs: FloatArray) -> Integrand:
    def residual(t: FloatArray) -> FloatArray:
        out = np.asarray(witness(t), dtype=np.float64).copy()
        for c, member in zip(coeffs, members, strict=True):
            if c != 0.0:
                out -= c * member(t)
        return out

    return residual


def distance_to_span(
    witness: Integrand,
    family: FamilyKind,
    alpha: AlphaParam,
    N: int,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    precision: Precision = Precision.DOUBLE,
    witness_name: str = "witness",
) -> GramReport:
    """L^2 distance from ``witness`` to span of the first n members, n = 1..N.

    The extended path (mpmath QR solve) runs when ``precision`` asks for it or
    the scaled Gram matrix has condition number above GRAM_CONDITION_LIMIT;
    either way the report's ``precision_flag`` is set.

    Raises:
        ParameterError: If N exceeds the family cap.
        PrecisionError: If the scaled Gram matrix is numerically singular.
    """
    members = family_members(family, alpha, N, precision)
    gram = _gram(members, quad)
    rhs = np.array([l2_inner(witness, member, quad) for member in members])
    scale = 1.0 / np.sqrt(np.diag(gram))
    scaled = gram * scale[:, None] * scale[None, :]
    singular = scipy.linalg.svdvals(scaled)
    if singular[-1] == 0.0:
        msg = f"{family.value} Gram matrix is singular at N={N}"
        raise PrecisionError(msg)
    condition = float(singular[0] / singular[-1])
    extended = precision is Precision.EXTENDED or condition > GRAM_CONDITION_LIMIT
    if extended:
        logger.info("Gram condition %.3e: solving in extended precision", condition)
    profile: list[tuple[int, float]] = []
    ranks: list[int] = []
    best = math.inf
    for n in range(1, N + 1):
        block, block_rhs = scaled[:n, :n], (rhs * scale)[:n]
        solver = _solve_extended if extended else _solve_pivoted
        solution, rank = solver(block, block_rhs)
        coeffs = solution * scale[:n]
        squared, _ = integrate(
            lambda t, c=coeffs, k=n: _combination(witness, members[:k], c)(t) ** 2,
            0.0,
            1.0,
            quad,
        )
        distance = math.sqrt(max(squared, 0.0))
        if distance > best:
            logger.warning(
                "distance rose from %.3e to %.3e at n=%d; keeping the smaller span's value",
                best,
                distance,
                n,
            )
            distance = best
        best = distance
        profile.append((n, distance))
        ranks.append(rank)
    return GramReport(
        size=N,
        family=family,
        witness=witness_name,
        smallest_singular_value=float(singular[-1]),
        distance_profile=tuple(profile),
        ranks=tuple(ranks),
        precision_flag=extended,
    )


def g_residual_witness(
    alpha: AlphaParam,
    count: int = G_FAMILY_CAP,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    precision: Precision = Precision.DOUBLE,
) -> Callable[[FloatArray], FloatArray]:
    """1 minus its L^2 projection onto g_1..g_count."""
    members = family_members(FamilyKind.G_FAMILY, alpha, count, precision)
    gram = _gram(members, quad)
    rhs = np.array([l2_inner(unit_witness, member, quad) for member in members])
    scale = 1.0 / np.sqrt(np.diag(gram))
    solution, _ = _solve_pivoted(gram * scale[:, None] * scale[None, :], rhs * scale)
    return _combination(unit_witness, members, solution * scale)
