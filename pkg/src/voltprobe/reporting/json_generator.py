"""JSON report generator for machine-readable export.

Floats are written in Python's shortest round-trip form, complex numbers as
[re, im] pairs and non-finite values as null; no timestamps are embedded, so
identical runs produce identical bytes.
"""

from __future__ import annotations

import json
import math
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from voltprobe.models.report import RunReport


def to_json_compatible(value: Any) -> Any:
    """Recursively convert a report value into plain JSON types."""
    if isinstance(value, Enum):
        return to_json_compatible(value.value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, np.generic):
        return to_json_compatible(value.item())
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return [to_json_compatible(value.real), to_json_compatible(value.imag)]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_json_compatible(v) for k, v in value.items()}
    if isinstance(value, list | tuple | np.ndarray):
        return [to_json_compatible(v) for v in value]
    msg = f"cannot serialize {type(value).__name__} to JSON"
    raise TypeError(msg)


class JsonReportGenerator:
    """Generates JSON reports from run reports."""

    def render(self, report: RunReport) -> str:
        """Render the report document with a trailing newline."""
        document = to_json_compatible(report.to_document())
        return json.dumps(document, indent=2, allow_nan=False) + "\n"

    def generate(self, report: RunReport, output_path: Path) -> None:
        """Generate a JSON report.

        Args:
            report: Report to write.
            output_path: Path to write the JSON report.
        """
        output_path.write_text(self.render(report), encoding="utf-8", newline="\n")
