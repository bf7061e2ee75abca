"""JUnit XML report generator for CI integration.

Generates JUnit XML format compatible with CI tools like GitHub Actions.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import TYPE_CHECKING

from voltprobe.reporting.json_generator import to_json_compatible

if TYPE_CHECKING:
    from voltprobe.models.report import CriterionResult


class JunitReportGenerator:
    """Generates JUnit XML reports from acceptance criterion results."""

    def generate(
        self,
        results: list[CriterionResult],
        output_path: Path,
        suite_name: str = "voltprobe",
    ) -> None:
        """Generate a JUnit XML report.

        Args:
            results: Criterion outcomes in criterion order.
            output_path: Path to write the XML report.
            suite_name: Name for the test suite.
        """
        testsuites = ET.Element("testsuites")

        testsuite = ET.SubElement(testsuites, "testsuite")
        testsuite.set("name", suite_name)
        testsuite.set("tests", str(len(results)))
        testsuite.set("failures", str(sum(1 for r in results if not r.passed)))
        testsuite.set("errors", "0")
        testsuite.set("time", f"{sum(r.duration_seconds for r in results):.3f}")

        for result in results:
            testcase = ET.SubElement(testsuite, "testcase")
            testcase.set("name", f"criterion_{result.criterion}_{_sanitize(result.name)}")
            testcase.set("classname", f"{suite_name}.acceptance")
            testcase.set("time", f"{result.duration_seconds:.3f}")

            if not result.passed:
                failure = ET.SubElement(testcase, "failure")
                failure.set("message", result.errors[0] if result.errors else "failed")
                failure.set("type", "AssertionError")
                failure.text = "\n".join(result.errors)

            system_out = ET.SubElement(testcase, "system-out")
            system_out.text = json.dumps(to_json_compatible(result.details), indent=2)

        tree = ET.ElementTree(testsuites)
        ET.indent(tree, space="  ")
        tree.write(output_path, encoding="unicode", xml_declaration=True)


def _sanitize(name: str) -> str:
    """Turn a criterion name into an identifier-like test name."""
    return name.replace("-", "_").replace(" ", "_")
