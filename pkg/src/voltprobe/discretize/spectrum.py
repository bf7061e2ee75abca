"""Dense eigenvalues of collocation matrices and ladder recovery."""

from __future__ import annotations

import logging
import math

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from voltprobe.discretize.matrix import build_matrix, default_grading, node_weights
from voltprobe.eigensystem import eigenvalue
from voltprobe.exceptions import ConvergenceError, ParameterError
from voltprobe.models.discrete import (
    ConvergenceRow,
    ConvergenceTable,
    FloatArray,
    Grid,
    InterpolationScheme,
    VMatrix,
)
from voltprobe.models.operator import SubstitutionMap
from voltprobe.models.params import AlphaParam

logger = logging.getLogger(__name__)

ComplexArray = NDArray[np.complex128]

# Complex eigenvalues with |Im| above this fraction of ||A|| are artifacts.
ARTIFACT_IMAG_TOL = 1e-8
# Backward error allowance c in c * N * eps.
BACKWARD_ERROR_CONSTANT = 16.0
INVERSE_ITERATION_STEPS = 50


def _weighted(matrix: VMatrix) -> FloatArray:
    """W^{1/2} A W^{-1/2}, the matrix in L^2-balanced coordinates (same spectrum)."""
    root = np.sqrt(node_weights(matrix.grid))
    return np.asarray(matrix.entries * root[:, None] / root[None, :])


def _quasi_triangular_eigenvalues(t: FloatArray) -> ComplexArray:
    n = t.shape[0]
    values = np.empty(n, dtype=np.complex128)
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            a, b, c, d = t[i, i], t[i, i + 1], t[i + 1, i], t[i + 1, i + 1]
            mean = 0.5 * (a + d)
            disc = 0.25 * (a - d) ** 2 + b * c
            root = complex(0.0, math.sqrt(-disc)) if disc < 0.0 else complex(math.sqrt(disc))
            values[i], values[i + 1] = mean + root, mean - root
            i += 2
        else:
            values[i] = t[i, i]
            i += 1
    return values


def _sorted_by_modulus(values: ComplexArray) -> ComplexArray:
    order = np.lexsort((-values.imag, -values.real, -np.abs(values)))
    return values[order]


def eigenvalues(matrix: VMatrix, verify: bool = False) -> ComplexArray:
    """All eigenvalues, sorted by decreasing modulus.

    Exactly lower-triangular matrices (phi(x) <= x) return their diagonal.
    Otherwise LAPACK runs on the balanced matrix; with ``verify`` a real Schur
    form is computed instead and its backward error checked against
    BACKWARD_ERROR_CONSTANT * N * eps.

    Raises:
        ConvergenceError: If the QR iteration fails or the backward error
            exceeds its bound.
    """
    entries = matrix.entries
    if not np.any(np.triu(entries, 1)):
        return _sorted_by_modulus(np.diag(entries).astype(np.complex128))
    balanced = _weighted(matrix)
    try:
        if verify:
            t, z = scipy.linalg.schur(balanced, output="real")
            error = float(
                np.linalg.norm(balanced - z @ t @ z.T) / np.linalg.norm(balanced)
            )
            bound = BACKWARD_ERROR_CONSTANT * matrix.size * np.finfo(np.float64).eps
            if error > bound:
                msg = f"Schur backward error {error:.3e} exceeds {bound:.3e}"
                raise ConvergenceError(msg)
            logger.debug("Schur backward error %.3e (bound %.3e)", error, bound)
            values = _quasi_triangular_eigenvalues(t)
        else:
            values = scipy.linalg.eigvals(balanced, overwrite_a=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        msg = f"eigenvalue iteration did not converge for N={matrix.size}: {e}"
        raise ConvergenceError(msg) from e
    return _sorted_by_modulus(np.asarray(values, dtype=np.complex128))


def spectrum(matrix: VMatrix, k: int, verify: bool = False) -> list[complex]:
    """The k largest-modulus eigenvalues, by decreasing modulus."""
    if not 1 <= k <= matrix.size:
        msg = f"k must lie in [1, {matrix.size}], got {k}"
        raise ParameterError(msg)
    return [complex(v) for v in eigenvalues(matrix, verify)[:k]]


def spectral_radius(matrix: VMatrix) -> float:
    return float(abs(eigenvalues(matrix)[0]))


def matrix_norm(matrix: VMatrix) -> float:
    """Infinity norm, the scale for the artifact threshold."""
    return float(np.abs(matrix.entries).sum(axis=1).max())


def match_ladder(
    values: ComplexArray, alpha: AlphaParam, k: int, scale: float
) -> tuple[list[float], list[float], int]:
    """Greedy match of the real eigenvalues against lambda_1..lambda_k.

    Returns:
        (matched moduli, relative errors, number of complex artifacts in the top k).
    """
    threshold = ARTIFACT_IMAG_TOL * scale
    artifacts = int(np.sum(np.abs(values[:k].imag) > threshold))
    real = values[np.abs(values.imag) <= threshold]
    moduli = [float(abs(v)) for v in real[:k]]
    errors = [
        abs(mod - eigenvalue(alpha, n)) / eigenvalue(alpha, n)
        for n, mod in enumerate(moduli, start=1)
    ]
    return moduli, errors, artifacts


def dominant_eigenpair(
    matrix: VMatrix, shift: float, tol: float = 1e-10
) -> tuple[float, FloatArray]:
    """Shifted inverse iteration for the eigenvalue nearest ``shift``.

    Returns:
        (eigenvalue, unit eigenvector of nodal values).

    Raises:
        ConvergenceError: If the iteration stalls.
    """
    n = matrix.size
    # keep A - sI away from exact singularity when shift is itself an eigenvalue
    perturbed = shift * (1.0 + 1e-10) + 1e-14
    factors = scipy.linalg.lu_factor(matrix.entries - perturbed * np.eye(n))
    vector = np.full(n, 1.0 / math.sqrt(n))
    for step in range(INVERSE_ITERATION_STEPS):
        solved = scipy.linalg.lu_solve(factors, vector)
        # v . (A - sI)^{-1} v = 1 / (lambda - s) for an eigenvector v
        new_estimate = perturbed + 1.0 / float(vector @ solved)
        nxt = solved / np.linalg.norm(solved)
        if nxt @ vector < 0.0:
            nxt = -nxt
        if np.linalg.norm(nxt - vector) < tol:
            logger.debug("inverse iteration converged after %d steps", step + 1)
            return new_estimate, nxt
        vector = nxt
    msg = f"inverse iteration near {shift} did not converge in {INVERSE_ITERATION_STEPS} steps"
    raise ConvergenceError(msg)


def convergence_study(
    alpha: AlphaParam,
    sizes: list[int],
    k: int,
    grading_exponent: float | None = None,
    scheme: InterpolationScheme = InterpolationScheme.LINEAR,
) -> ConvergenceTable:
    """Recovered ladder for V_alpha on graded grids of increasing size.

    The top eigenvalue's relative error must not increase with N; increases
    are flagged, not raised.
    """
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:], strict=False)):
        msg = f"sizes must be a non-empty increasing list, got {sizes}"
        raise ParameterError(msg)
    if not 1 <= k <= sizes[0]:
        msg = f"k must lie in [1, {sizes[0]}], got {k}"
        raise ParameterError(msg)
    gamma = grading_exponent or default_grading(alpha.alpha)
    phi = SubstitutionMap.power(alpha.alpha)
    rows: list[ConvergenceRow] = []
    for size in sizes:
        matrix = build_matrix(phi, Grid.graded(size, gamma), scheme)
        moduli, errors, artifacts = match_ladder(eigenvalues(matrix), alpha, k, matrix_norm(matrix))
        rows.append(
            ConvergenceRow(
                size=size,
                moduli=tuple(moduli),
                relative_errors=tuple(errors),
                artifacts=artifacts,
            )
        )
        logger.info("N=%d: top relative error %.3e", size, errors[0] if errors else math.nan)
    flags = [
        f"top error rose from N={prev.size} to N={cur.size}"
        for prev, cur in zip(rows, rows[1:], strict=False)
        if prev.relative_errors and cur.relative_errors
        and cur.relative_errors[0] > prev.relative_errors[0]
    ]
    return ConvergenceTable(
        alpha=alpha.alpha,
        k=k,
        rows=tuple(rows),
        top_error_monotone=not flags,
        flags=tuple(flags),
    )
