"""Collocation matrices for V_phi on graded grids.

Row i integrates an interpolant of the nodal values over [0, phi(x_i)]. The
interpolant is constant on [0, x_1] and on [x_N, 1]; between nodes it is
piecewise linear (default) or the local four-point cubic.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.typing import NDArray

from voltprobe.exceptions import DiscretizationError
from voltprobe.models.discrete import FloatArray, Grid, InterpolationScheme, VMatrix
from voltprobe.models.operator import SubstitutionMap

logger = logging.getLogger(__name__)

CUBIC_STENCIL = 4

IndexArray = NDArray[np.intp]


def default_grading(alpha: float) -> float:
    """gamma = (2 - 2 alpha) / alpha, clipped to [1, 4]."""
    return min(4.0, max(1.0, (2.0 - 2.0 * alpha) / alpha))


def _cell_index(nodes: FloatArray, upper: FloatArray) -> IndexArray:
    """Cell j with x_j <= u < x_{j+1}; -1 left of x_1 and N-1 at or past x_N."""
    return np.searchsorted(nodes, upper, side="right") - 1


def _end_weights(nodes: FloatArray, upper: FloatArray, cells: IndexArray) -> FloatArray:
    """Constant-extension contributions on [0, x_1] and [x_N, 1]."""
    n = nodes.size
    weights = np.zeros((upper.size, n))
    weights[:, 0] += np.minimum(upper, nodes[0])
    tail = cells == n - 1
    weights[tail, n - 1] += upper[tail] - nodes[-1]
    return weights


def _linear_weights(nodes: FloatArray, upper: FloatArray) -> FloatArray:
    n = nodes.size
    cells = _cell_index(nodes, upper)
    widths = np.diff(nodes)
    left_half = np.concatenate([[0.0], 0.5 * widths])
    right_half = np.concatenate([0.5 * widths, [0.0]])
    columns = np.arange(n)
    weights = _end_weights(nodes, upper, cells)
    weights += (columns[None, :] <= cells[:, None]) * left_half[None, :]
    weights += (columns[None, :] < cells[:, None]) * right_half[None, :]
    rows = np.flatnonzero((cells >= 0) & (cells < n - 1))
    j = cells[rows]
    s = upper[rows] - nodes[j]
    h = widths[j]
    weights[rows, j] += s - s * s / (2.0 * h)
    weights[rows, j + 1] += s * s / (2.0 * h)
    return weights


def _stencil(cell: int, n: int) -> IndexArray:
    start = min(max(cell - 1, 0), n - CUBIC_STENCIL)
    return np.arange(start, start + CUBIC_STENCIL)


def _cubic_cell_integrals(
    nodes: FloatArray, cell: int, upper: float
) -> tuple[IndexArray, FloatArray]:
    """int_{x_c}^{upper} of the Lagrange basis on the cell's four-node stencil."""
    stencil = _stencil(cell, nodes.size)
    local = nodes[stencil] - nodes[cell]
    integrals = np.empty(CUBIC_STENCIL)
    for k in range(CUBIC_STENCIL):
        others = np.delete(local, k)
        basis = P.polyfromroots(others) / np.prod(local[k] - others)
        integrals[k] = P.polyval(upper - nodes[cell], P.polyint(basis))
    return stencil, integrals


def _cubic_weights(nodes: FloatArray, upper: FloatArray) -> FloatArray:
    n = nodes.size
    if n < CUBIC_STENCIL:
        msg = f"cubic scheme needs at least {CUBIC_STENCIL} nodes, got {n}"
        raise DiscretizationError(msg)
    cells = _cell_index(nodes, upper)
    full = np.zeros((n, n))
    for c in range(n - 1):
        stencil, integrals = _cubic_cell_integrals(nodes, c, nodes[c + 1])
        full[c + 1] = full[c]
        full[c + 1, stencil] += integrals
    weights = _end_weights(nodes, upper, cells)
    for i, (j, u) in enumerate(zip(cells, upper, strict=True)):
        if j < 0:
            continue
        weights[i] += full[j]
        if j < n - 1:
            stencil, integrals = _cubic_cell_integrals(nodes, int(j), float(u))
            weights[i, stencil] += integrals
    return weights


def build_matrix(
    phi: SubstitutionMap,
    grid: Grid,
    scheme: InterpolationScheme = InterpolationScheme.LINEAR,
) -> VMatrix:
    """Assemble the collocation matrix of V_phi on ``grid``.

    Raises:
        DiscretizationError: If phi leaves [0, 1] at a node, or the scheme
            needs more nodes than the grid has.
    """
    upper = np.asarray(phi(grid.nodes), dtype=np.float64)
    if not np.all(np.isfinite(upper)) or np.any(upper < 0.0) or np.any(upper > 1.0):
        msg = f"{phi.label} maps a grid node outside [0, 1]"
        raise DiscretizationError(msg)
    if scheme is InterpolationScheme.CUBIC:
        entries = _cubic_weights(grid.nodes, upper)
    else:
        entries = _linear_weights(grid.nodes, upper)
    logger.debug("built %s matrix for %s on %d nodes", scheme.value, phi.label, grid.size)
    return VMatrix(entries=entries, grid=grid, phi=phi, scheme=scheme)


def node_weights(grid: Grid) -> FloatArray:
    """Integrals over [0, 1] of the piecewise-linear nodal basis (positive)."""
    return _linear_weights(grid.nodes, np.array([1.0]))[0]


def is_subdiagonal(phi: SubstitutionMap, grid: Grid) -> bool:
    """Whether phi(x_i) <= x_i at every node."""
    return bool(np.all(phi(grid.nodes) <= grid.nodes))


def flip_conjugate(matrix: VMatrix) -> VMatrix:
    """Reverse-permutation conjugation P A P, the discrete (Uf)(x) = f(1 - x).

    Raises:
        DiscretizationError: If the grid is not mirror-symmetric.
    """
    if not matrix.grid.symmetric:
        msg = "flip_conjugate needs a grid symmetric under x -> 1 - x"
        raise DiscretizationError(msg)
    return VMatrix(
        entries=np.ascontiguousarray(matrix.entries[::-1, ::-1]),
        grid=matrix.grid,
        phi=matrix.phi,
        scheme=matrix.scheme,
        flipped=not matrix.flipped,
    )
