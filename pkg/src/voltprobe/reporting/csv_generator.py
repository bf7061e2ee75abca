"""CSV export of a report's plot-ready table."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import TYPE_CHECKING

from voltprobe.exceptions import VoltProbeError

if TYPE_CHECKING:
    from voltprobe.models.report import RunReport


class CsvReportGenerator:
    """Header row, then numeric rows; '.' decimal separator and LF line endings."""

    def render(self, report: RunReport) -> str:
        if report.table is None:
            msg = f"the {report.command} command has no tabular output"
            raise VoltProbeError(msg)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(report.table.header)
        for row in report.table.rows:
            writer.writerow([repr(float(v)) for v in row])
        return buffer.getvalue()

    def generate(self, report: RunReport, output_path: Path) -> None:
        output_path.write_text(self.render(report), encoding="utf-8", newline="\n")
