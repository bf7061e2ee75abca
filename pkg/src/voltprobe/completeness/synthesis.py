"""Compression of V_alpha onto the orthocomplement of adjoint eigenfunctions."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from voltprobe.discretize import build_matrix, default_grading, node_weights
from voltprobe.eigensystem import g_eval, g_terms
from voltprobe.exceptions import ConvergenceError, ParameterError
from voltprobe.models.discrete import Grid
from voltprobe.models.operator import SubstitutionMap
from voltprobe.models.params import AlphaParam, Precision

logger = logging.getLogger(__name__)


def invariant_subspace_demo(
    alpha: AlphaParam,
    m: int,
    N: int,
    precision: Precision = Precision.DOUBLE,
    grading_exponent: float | None = None,
) -> float:
    """Spectral radius of P A P, P projecting away from sampled g_1..g_m.

    Everything runs in L^2-balanced coordinates W^{1/2} A W^{-1/2}, where
    orthogonality is the discrete L^2 inner product.

    Raises:
        ParameterError: If m is negative.
        PrecisionError: Propagated from g_n construction.
        DiscretizationError: Propagated for N above the dense limit.
    """
    if m < 0:
        msg = f"number of removed adjoint eigenfunctions must be non-negative, got {m}"
        raise ParameterError(msg)
    grid = Grid.graded(N, grading_exponent or default_grading(alpha.alpha))
    matrix = build_matrix(SubstitutionMap.power(alpha.alpha), grid)
    root = np.sqrt(node_weights(grid))
    balanced = matrix.entries * root[:, None] / root[None, :]
    if m > 0:
        samples = np.column_stack(
            [
                g_eval(g_terms(alpha, j, precision=precision), grid.nodes)
                for j in range(1, m + 1)
            ]
        )
        basis, _ = np.linalg.qr(root[:, None] * samples)
        projected = balanced - basis @ (basis.T @ balanced)
        balanced = projected - (projected @ basis) @ basis.T
    try:
        values = scipy.linalg.eigvals(balanced, overwrite_a=True)
    except np.linalg.LinAlgError as e:
        msg = f"eigenvalue iteration failed for the compressed operator (m={m}, N={N})"
        raise ConvergenceError(msg) from e
    radius = float(np.max(np.abs(values)))
    logger.debug("compressed radius alpha=%s m=%d N=%d: %.6e", alpha.alpha, m, N, radius)
    return radius
