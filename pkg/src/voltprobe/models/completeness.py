"""Gram-matrix and Muntz evidence for (non-)completeness."""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FamilyKind(str, Enum):
    """Eigenfunction family spanning the approximation space."""

    F_FAMILY = "f_family"
    G_FAMILY = "g_family"


class GramReport(BaseModel):
    """Distance of a witness to span{first N members of a family}."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=1)
    family: FamilyKind
    witness: str
    smallest_singular_value: float = Field(ge=0.0)
    distance_profile: tuple[tuple[int, float], ...]
    ranks: tuple[int, ...]
    precision_flag: bool = False

    @model_validator(mode="after")
    def _check_monotone(self) -> GramReport:
        distances = [d for _, d in self.distance_profile]
        if any(b > a for a, b in zip(distances, distances[1:], strict=False)):
            msg = "distance profile must be non-increasing"
            raise ValueError(msg)
        return self

    @property
    def final_distance(self) -> float:
        return self.distance_profile[-1][1]

    def to_document(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "family": self.family.value,
            "witness": self.witness,
            "smallest_singular_value": self.smallest_singular_value,
            "distance_profile": [[n, d] for n, d in self.distance_profile],
            "ranks": list(self.ranks),
            "precision_flag": self.precision_flag,
        }


class MuntzSummary(BaseModel):
    """Partial sums of sum 1/mu_k for the adjoint exponents."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    partial_sums: tuple[float, ...]
    ratio_limit: float
    last_ratio: float
    tail_bound: float

    def to_document(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "partial_sums": list(self.partial_sums),
            "ratio_limit": self.ratio_limit,
            "last_ratio": self.last_ratio,
            "tail_bound": self.tail_bound,
        }
