"""Run configuration models.

Defines the resolved parameters every command pipeline receives, including
the contract tolerances embedded in each report.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from voltprobe.models.discrete import MAX_GRID_SIZE
from voltprobe.models.operator import QuadratureSpec
from voltprobe.models.params import Precision


class Command(str, Enum):
    """Pipelines reachable from the command line."""

    SPECTRUM = "spectrum"
    EIGENFUN = "eigenfun"
    RESIDUALS = "residuals"
    DISCRETIZE = "discretize"
    ZEROS = "zeros"
    QCHECK = "qcheck"
    COMPLETENESS = "completeness"
    REPORT = "report"


class OutputFormat(str, Enum):
    """Report serialization format."""

    JSON = "json"
    CSV = "csv"


class Tolerances(BaseModel):
    """Contract thresholds checked by the pipelines and the acceptance suite."""

    model_config = ConfigDict(frozen=True)

    residual_f: float = Field(default=1e-8, gt=0)
    residual_g: float = Field(default=1e-6, gt=0)
    spectrum_top: float = Field(default=1e-3, gt=0)
    spectrum_fifth: float = Field(default=2e-2, gt=0)
    qseries_agreement: float = Field(default=1e-12, gt=0)
    root_check: float = Field(default=1e-10, gt=0)
    s1: float = Field(default=1e-9, gt=0)
    zero_map: float = Field(default=1e-10, gt=0)
    completeness_distance: float = Field(default=0.05, gt=0)
    muntz_ratio: float = Field(default=1e-6, gt=0)
    subspace_slack: float = Field(default=1.1, ge=1.0)
    flip_match: float = Field(default=1e-3, gt=0)
    quasinilpotent_radius: float = Field(default=1e-2, gt=0)


class DiscretizeConfig(BaseModel):
    """Defaults for the collocation pipelines."""

    model_config = ConfigDict(frozen=True)

    grid_size: int = Field(default=512, ge=1, le=MAX_GRID_SIZE)
    grading_exponent: float | None = Field(default=None, ge=1.0)
    top_k: int = Field(default=5, ge=1)


class RunConfig(BaseModel):
    """Fully resolved configuration of one command invocation."""

    model_config = ConfigDict(frozen=True)

    command: Command
    alpha: float = Field(default=0.5, gt=0.0, lt=1.0)
    n: int = Field(default=5, ge=1)
    grid_size: int = Field(default=512, ge=1, le=MAX_GRID_SIZE)
    tol: float = Field(default=1e-8, gt=0.0)
    precision: Precision = Precision.DOUBLE
    grading_exponent: float | None = Field(default=None, ge=1.0)
    top_k: int = Field(default=5, ge=1)
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    tolerances: Tolerances = Field(default_factory=Tolerances)


class PhiChoice(str, Enum):
    """Substitution maps selectable from the command line."""

    POWER = "power"
    FLIPPED = "flipped"
    IDENTITY = "identity"
    SQUARE = "square"
    HALF = "half"


class CommandOptions(BaseModel):
    """Command-specific options that are not part of the shared run configuration."""

    model_config = ConfigDict(frozen=True)

    q: float | None = Field(default=None, gt=-1.0, lt=1.0)
    z: float = 1.0
    phi: PhiChoice = PhiChoice.POWER
    k: int | None = Field(default=None, ge=1)
    mesh: int | None = Field(default=None, ge=2)
    export: Path | None = None
    junit: Path | None = None
    quick: bool = False
