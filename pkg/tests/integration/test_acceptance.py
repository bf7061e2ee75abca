"""Integration tests: the acceptance suite at full problem sizes."""

import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from voltprobe.models import Command, CommandOptions, CriterionResult, PhiChoice, RunConfig
from voltprobe.reporting import JsonReportGenerator
from voltprobe.runner import CRITERIA, run, run_acceptance

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def outcomes() -> list[CriterionResult]:
    """Run the full suite once for the module."""
    return run_acceptance(RunConfig(command=Command.REPORT))


class TestFullSuite:
    """Every criterion passes with the default tolerances."""

    def test_all_criteria_reported(self, outcomes: list[CriterionResult]) -> None:
        """One outcome per criterion, in order."""
        assert [o.criterion for o in outcomes] == list(range(1, len(CRITERIA) + 1))

    @pytest.mark.parametrize("index", range(1, 9))
    def test_criterion_passes(self, outcomes: list[CriterionResult], index: int) -> None:
        """Criterion passes without errors."""
        outcome = outcomes[index - 1]
        assert outcome.passed, outcome.errors

    def test_ladder_details(self, outcomes: list[CriterionResult]) -> None:
        """The recovered moduli sit on the ladder at alpha = 0.5."""
        details = outcomes[0].details["alpha=0.5"]
        assert details["moduli"] == pytest.approx([0.5, 0.25, 0.125, 0.0625, 0.03125], rel=2e-2)
        assert details["relative_errors"][0] < 1e-3

    def test_quasinilpotent_radii_shrink(self, outcomes: list[CriterionResult]) -> None:
        """Radii of the quasinilpotent maps fall below 1e-2 at N = 2048."""
        for entry in outcomes[6].details.values():
            assert entry["spectral_radii"][-1] < 1e-2


class TestReportCommand:
    """The report pipeline end to end."""

    def test_quick_report_document(self, tmp_path: Path) -> None:
        """The quick suite yields a JSON document and JUnit XML."""
        junit = tmp_path / "junit.xml"
        report = run(RunConfig(command=Command.REPORT), CommandOptions(quick=True, junit=junit))
        data = json.loads(JsonReportGenerator().render(report))
        assert len(data["results"]["criteria"]) == len(CRITERIA)
        assert all("duration_seconds" not in c for c in data["results"]["criteria"])
        suite = ET.parse(junit).find(".//testsuite")
        assert suite is not None
        assert suite.get("tests") == str(len(CRITERIA))

    def test_discretize_flipped_matches_power(self) -> None:
        """The reflected adjoint map has the same top moduli as the power map."""
        power = run(
            RunConfig(command=Command.DISCRETIZE, alpha=0.5, grid_size=2048),
            CommandOptions(k=5),
        )
        flipped = run(
            RunConfig(command=Command.DISCRETIZE, alpha=0.5, grid_size=2048),
            CommandOptions(k=5, phi=PhiChoice.FLIPPED),
        )
        for a, b in zip(power.results["moduli"], flipped.results["moduli"], strict=True):
            assert abs(a - b) / a < 1e-3
