"""Collocation grids, matrices and convergence tables."""

from __future__ import annotations

from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from voltprobe.exceptions import DiscretizationError
from voltprobe.models.operator import SubstitutionMap

FloatArray = NDArray[np.float64]

# Dense storage ceiling (4096^2 doubles = 128 MiB).
MAX_GRID_SIZE = 4096
# Tolerance for the x -> 1 - x symmetry check.
SYMMETRY_TOL = 1e-14


class InterpolationScheme(str, Enum):
    """Interpolant integrated by each matrix row."""

    LINEAR = "linear"
    CUBIC = "cubic"


def _frozen_array(values: Any) -> FloatArray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class Grid(BaseModel):
    """Collocation nodes 0 < x_1 < ... < x_N <= 1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: FloatArray
    grading_exponent: float = Field(ge=1.0)
    symmetric: bool = False

    @field_validator("nodes", mode="before")
    @classmethod
    def _check_nodes(cls, value: Any) -> FloatArray:
        nodes = _frozen_array(value)
        if nodes.ndim != 1 or nodes.size == 0:
            msg = "grid nodes must be a non-empty vector"
            raise DiscretizationError(msg)
        if nodes.size > MAX_GRID_SIZE:
            msg = f"grid size {nodes.size} exceeds the dense limit {MAX_GRID_SIZE}"
            raise DiscretizationError(msg)
        if not np.all(np.isfinite(nodes)) or nodes[0] <= 0.0 or nodes[-1] > 1.0:
            msg = "grid nodes must lie in (0, 1]"
            raise DiscretizationError(msg)
        if np.any(np.diff(nodes) <= 0.0):
            msg = "grid nodes must increase strictly"
            raise DiscretizationError(msg)
        return nodes

    @model_validator(mode="after")
    def _check_symmetry(self) -> Grid:
        if self.symmetric and not np.allclose(
            self.nodes, 1.0 - self.nodes[::-1], rtol=0.0, atol=SYMMETRY_TOL
        ):
            msg = "grid flagged symmetric is not invariant under x -> 1 - x"
            raise DiscretizationError(msg)
        return self

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @classmethod
    def graded(cls, size: int, grading_exponent: float = 2.0) -> Grid:
        """Nodes (i / N)^gamma, i = 1..N, clustered at 0 and ending at 1."""
        if size < 1:
            msg = f"grid size must be positive, got {size}"
            raise DiscretizationError(msg)
        i = np.arange(1, size + 1, dtype=np.float64)
        nodes = (i / size) ** grading_exponent
        nodes[-1] = 1.0
        return cls(nodes=nodes, grading_exponent=grading_exponent)

    @classmethod
    def symmetric_graded(cls, size: int, grading_exponent: float = 2.0) -> Grid:
        """Midpoints of a partition graded toward both ends, mirror-symmetric.

        Cell edges are s(j/N) with s(u) = u^g / (u^g + (1-u)^g). The upper half
        of the nodes is written as 1 - (lower half) so the symmetry is exact.
        """
        if size < 1:
            msg = f"grid size must be positive, got {size}"
            raise DiscretizationError(msg)
        u = np.arange(size + 1, dtype=np.float64) / size
        edges = u**grading_exponent / (u**grading_exponent + (1.0 - u) ** grading_exponent)
        mids = 0.5 * (edges[:-1] + edges[1:])
        half = size // 2
        nodes = mids.copy()
        nodes[size - half :] = 1.0 - mids[:half][::-1]
        if size % 2 == 1:
            nodes[half] = 0.5
        return cls(nodes=nodes, grading_exponent=grading_exponent, symmetric=True)


class VMatrix(BaseModel):
    """Dense N x N collocation matrix of V_phi on a grid.

    ``flipped`` records an odd number of reverse-permutation conjugations.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: FloatArray
    grid: Grid
    phi: SubstitutionMap
    scheme: InterpolationScheme = InterpolationScheme.LINEAR
    flipped: bool = False

    @field_validator("entries", mode="before")
    @classmethod
    def _freeze(cls, value: Any) -> FloatArray:
        return _frozen_array(value)

    @model_validator(mode="after")
    def _check_shape(self) -> VMatrix:
        n = self.grid.size
        if self.entries.shape != (n, n):
            msg = f"matrix shape {self.entries.shape} does not match grid size {n}"
            raise DiscretizationError(msg)
        return self

    @property
    def size(self) -> int:
        return self.grid.size


class ConvergenceRow(BaseModel):
    """Top-k recovery at one grid size."""

    model_config = ConfigDict(frozen=True)

    size: int
    moduli: tuple[float, ...]
    relative_errors: tuple[float, ...]
    artifacts: int = Field(ge=0, description="complex pairs among the top-k, not matched")


class ConvergenceTable(BaseModel):
    """Relative errors of the recovered ladder across grid sizes."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    k: int
    rows: tuple[ConvergenceRow, ...]
    top_error_monotone: bool
    flags: tuple[str, ...] = ()

    def to_document(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "k": self.k,
            "rows": [
                {
                    "size": row.size,
                    "moduli": list(row.moduli),
                    "relative_errors": list(row.relative_errors),
                    "artifacts": row.artifacts,
                }
                for row in self.rows
            ],
            "top_error_monotone": self.top_error_monotone,
            "flags": list(self.flags),
        }
