"""Command pipelines and the acceptance suite."""

from voltprobe.runner.acceptance import (
    CRITERIA,
    FULL_SUITE,
    QUICK_SUITE,
    SuiteSettings,
    run_acceptance,
)
from voltprobe.runner.pipelines import PIPELINES, collect_warnings, run

__all__ = [
    "CRITERIA",
    "FULL_SUITE",
    "PIPELINES",
    "QUICK_SUITE",
    "SuiteSettings",
    "collect_warnings",
    "run",
    "run_acceptance",
]
