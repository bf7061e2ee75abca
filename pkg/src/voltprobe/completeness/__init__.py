"""Numerical evidence for completeness, non-completeness and failed synthesis."""

from voltprobe.completeness.gram import (
    F_FAMILY_CAP,
    G_FAMILY_CAP,
    distance_to_span,
    family_members,
    g_residual_witness,
    sqrt_witness,
    unit_witness,
)
from voltprobe.completeness.muntz import exponent, inverse_exponent, muntz_sum
from voltprobe.completeness.synthesis import invariant_subspace_demo

__all__ = [
    "F_FAMILY_CAP",
    "G_FAMILY_CAP",
    "distance_to_span",
    "exponent",
    "family_members",
    "g_residual_witness",
    "inverse_exponent",
    "invariant_subspace_demo",
    "muntz_sum",
    "sqrt_witness",
    "unit_witness",
]
