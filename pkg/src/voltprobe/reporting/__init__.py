"""Reporting module for writing run reports in various formats."""

from voltprobe.reporting.csv_generator import CsvReportGenerator
from voltprobe.reporting.json_generator import JsonReportGenerator, to_json_compatible
from voltprobe.reporting.junit_generator import JunitReportGenerator

__all__ = [
    "CsvReportGenerator",
    "JsonReportGenerator",
    "JunitReportGenerator",
    "to_json_compatible",
]
