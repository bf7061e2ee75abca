"""Collocation of V_phi and numerical recovery of its point spectrum."""

from voltprobe.discretize.export import export_matrix, load_matrix
from voltprobe.discretize.matrix import (
    build_matrix,
    default_grading,
    flip_conjugate,
    is_subdiagonal,
    node_weights,
)
from voltprobe.discretize.spectrum import (
    ARTIFACT_IMAG_TOL,
    convergence_study,
    dominant_eigenpair,
    eigenvalues,
    match_ladder,
    matrix_norm,
    spectral_radius,
    spectrum,
)

__all__ = [
    "ARTIFACT_IMAG_TOL",
    "build_matrix",
    "convergence_study",
    "default_grading",
    "dominant_eigenpair",
    "eigenvalues",
    "export_matrix",
    "flip_conjugate",
    "is_subdiagonal",
    "load_matrix",
    "match_ladder",
    "matrix_norm",
    "node_weights",
    "spectral_radius",
    "spectrum",
]
