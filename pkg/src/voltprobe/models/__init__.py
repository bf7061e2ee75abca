"""Data models for VoltProbe."""

from voltprobe.models.completeness import FamilyKind, GramReport, MuntzSummary
from voltprobe.models.config import (
    Command,
    CommandOptions,
    DiscretizeConfig,
    OutputFormat,
    PhiChoice,
    RunConfig,
    Tolerances,
)
from voltprobe.models.discrete import (
    ConvergenceRow,
    ConvergenceTable,
    Grid,
    InterpolationScheme,
    VMatrix,
)
from voltprobe.models.eigen import FEigenfunction, GEigenfunction
from voltprobe.models.operator import MapKind, QuadratureSpec, SubstitutionMap
from voltprobe.models.params import AlphaParam, Precision, QParam
from voltprobe.models.polynomial import PnPolynomial
from voltprobe.models.report import CriterionResult, DataTable, RunReport
from voltprobe.models.roots import RootDomain, RootSet

__all__ = [
    "AlphaParam",
    "Command",
    "CommandOptions",
    "ConvergenceRow",
    "ConvergenceTable",
    "CriterionResult",
    "DataTable",
    "DiscretizeConfig",
    "FEigenfunction",
    "FamilyKind",
    "GEigenfunction",
    "GramReport",
    "Grid",
    "InterpolationScheme",
    "MapKind",
    "MuntzSummary",
    "OutputFormat",
    "PhiChoice",
    "PnPolynomial",
    "Precision",
    "QParam",
    "QuadratureSpec",
    "RootDomain",
    "RootSet",
    "RunConfig",
    "RunReport",
    "SubstitutionMap",
    "Tolerances",
    "VMatrix",
]
