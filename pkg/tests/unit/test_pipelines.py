"""Tests for the command pipelines."""

import logging
from pathlib import Path
from unittest.mock import patch

import pytest

from voltprobe.models import (
    Command,
    CommandOptions,
    CriterionResult,
    PhiChoice,
    Precision,
    RunConfig,
    Tolerances,
)
from voltprobe.runner import PIPELINES, collect_warnings, run


def _config(command: Command, **values: object) -> RunConfig:
    return RunConfig.model_validate({"command": command, **values})


class TestRun:
    """Tests for pipeline dispatch and report assembly."""

    def test_every_command_has_a_pipeline(self) -> None:
        """All eight commands dispatch."""
        assert set(PIPELINES) == set(Command)

    def test_spectrum(self) -> None:
        """alpha = 0.5, n = 5 gives the halving ladder."""
        report = run(_config(Command.SPECTRUM, alpha=0.5, n=5))
        assert report.exit_code == 0
        assert report.results["eigenvalues"] == [0.5, 0.25, 0.125, 0.0625, 0.03125]
        assert report.results["spectral_radius"] == 0.5
        assert report.params["alpha"] == 0.5
        assert report.table is not None
        assert report.table.header == ("n", "lambda")

    def test_tolerances_recorded(self) -> None:
        """The document lists every tolerance in force."""
        report = run(_config(Command.SPECTRUM, tol=1e-9))
        assert report.tolerances["tol"] == 1e-9
        assert report.tolerances["residual_g"] == Tolerances().residual_g

    def test_errors_are_captured(self) -> None:
        """Module errors become report errors, not exceptions."""
        report = run(_config(Command.COMPLETENESS, n=40))
        assert report.exit_code == 1
        assert report.errors
        assert report.errors[0].startswith("ParameterError")

    def test_warnings_collected(self) -> None:
        """Warnings logged during the run land in the report, deduplicated."""

        def noisy(config: RunConfig, options: CommandOptions, draft: object) -> None:
            log = logging.getLogger("voltprobe.test")
            log.warning("watch out")
            log.warning("watch out")

        with patch.dict(PIPELINES, {Command.SPECTRUM: noisy}):
            report = run(_config(Command.SPECTRUM))
        assert report.warnings == ["watch out"]

    def test_collect_warnings_ignores_info(self) -> None:
        """Only WARNING and above are collected."""
        with collect_warnings() as messages:
            logging.getLogger("voltprobe.test").info("quiet")
            logging.getLogger("voltprobe.test").error("loud")
        assert messages == ["loud"]


class TestEigenfunPipeline:
    """Tests for the eigenfun command."""

    def test_documents_and_table(self) -> None:
        """Both families are described, g_n(1) within its bound."""
        report = run(_config(Command.EIGENFUN, alpha=0.5, n=3), CommandOptions(mesh=20))
        assert report.exit_code == 0
        assert report.results["f"]["n"] == 3
        at_one = report.results["g_at_one"]
        assert abs(at_one["value"]) <= at_one["bound"]
        assert report.table is not None
        assert report.table.header == ("x", "f_3", "g_3")
        assert len(report.table.rows) == 21

    def test_precision_refusal_fails(self) -> None:
        """g_n beyond the double budget is reported, f_n still tabulated."""
        report = run(_config(Command.EIGENFUN, alpha=0.1, n=6), CommandOptions(mesh=10))
        assert report.exit_code == 1
        assert "f" in report.results
        assert report.table is not None
        assert report.table.header == ("x", "f_6")

    def test_extended_precision(self) -> None:
        """Extended precision builds the same g_n."""
        report = run(
            _config(Command.EIGENFUN, alpha=0.1, n=6, precision=Precision.EXTENDED),
            CommandOptions(mesh=10),
        )
        assert report.exit_code == 0
        assert report.params["precision"] == "extended"


class TestResidualsPipeline:
    """Tests for the residuals command."""

    def test_small_residuals(self) -> None:
        """Residuals for n = 1..3 pass their tolerances."""
        report = run(_config(Command.RESIDUALS, alpha=0.5, n=3))
        assert report.exit_code == 0
        assert [entry["n"] for entry in report.results["residuals"]] == [1, 2, 3]

    def test_tight_tolerance_fails(self) -> None:
        """A tolerance below quadrature accuracy fails the contract."""
        report = run(_config(Command.RESIDUALS, alpha=0.5, n=2, tol=1e-30))
        assert report.exit_code == 1
        assert not report.passed


class TestDiscretizePipeline:
    """Tests for the discretize command."""

    def test_power_ladder(self) -> None:
        """The recovered top eigenvalue is near 1 - alpha."""
        report = run(_config(Command.DISCRETIZE, alpha=0.5, grid_size=128), CommandOptions(k=3))
        assert report.results["phi"] == "power(0.5)"
        assert report.results["moduli"][0] == pytest.approx(0.5, rel=1e-2)
        assert len(report.results["ladder"]["moduli"]) == 3

    def test_identity_has_no_ladder(self) -> None:
        """Quasinilpotent maps report only the radius."""
        report = run(
            _config(Command.DISCRETIZE, grid_size=64), CommandOptions(phi=PhiChoice.IDENTITY)
        )
        assert "ladder" not in report.results
        assert report.results["spectral_radius"] < 0.02

    def test_export(self, tmp_path: Path) -> None:
        """--export writes the binary matrix."""
        target = tmp_path / "matrix.bin"
        report = run(_config(Command.DISCRETIZE, grid_size=16), CommandOptions(export=target))
        assert target.stat().st_size == 8 + 8 * (16 * 16 + 16)
        assert report.results["export"] == str(target)


class TestZerosPipeline:
    """Tests for the zeros command."""

    def test_third_eigenfunction(self) -> None:
        """Zeros of f_3, interlacing with f_2 and the g scan."""
        report = run(_config(Command.ZEROS, alpha=0.5, n=3))
        assert report.exit_code == 0
        assert len(report.results["f_zeros"]["values"]) == 3
        assert report.results["interlaces_previous"] is True
        assert report.results["g_scan"]["endpoint_values"] == [1.0]

    def test_explicit_q(self) -> None:
        """--q selects the P_n base."""
        report = run(_config(Command.ZEROS, alpha=0.5, n=1), CommandOptions(q=0.3))
        assert report.results["pn_roots"]["values"] == pytest.approx([1.0])
        assert report.params["q"] == 0.3


class TestQcheckPipeline:
    """Tests for the qcheck command."""

    def test_agreement(self) -> None:
        """Product and series agree, roots check, S_1 = 1."""
        report = run(_config(Command.QCHECK, alpha=0.5, n=2), CommandOptions(q=0.5, z=1.0))
        assert report.exit_code == 0
        assert report.results["product"] == pytest.approx(0.2887880950866024, abs=1e-14)
        assert report.results["difference"] < 1e-12
        assert len(report.results["root_checks"]) == 3
        assert report.results["s1"] == pytest.approx(1.0, abs=1e-9)

    def test_negative_q(self) -> None:
        """Negative bases are accepted."""
        report = run(_config(Command.QCHECK, n=1), CommandOptions(q=-0.5, z=2.0))
        assert report.exit_code == 0
        assert report.results["q"] == -0.5

    def test_negative_root_check_fails(self) -> None:
        """A large root-check value of either sign fails the run."""
        with patch("voltprobe.runner.pipelines.fq_root_check", return_value=-1.0):
            report = run(_config(Command.QCHECK, alpha=0.5, n=2), CommandOptions(q=0.5, z=1.0))
        assert report.exit_code == 1
        assert any("root check reached 1.000e+00" in e for e in report.errors)


class TestCompletenessPipeline:
    """Tests for the completeness command."""

    def test_small_run(self) -> None:
        """Distance profile, Muntz summary and compressed radii."""
        report = run(_config(Command.COMPLETENESS, alpha=0.5, n=4, grid_size=256))
        assert not any(e.startswith("ParameterError") for e in report.errors)
        assert len(report.results["f_family"]["distance_profile"]) == 4
        assert abs(report.results["muntz"]["ratio_limit"] - 0.5) < 1e-6
        assert [row["m"] for row in report.results["invariant_subspace"]] == [0, 1, 2, 3, 4]


class TestReportPipeline:
    """Tests for the report command."""

    @pytest.fixture
    def outcomes(self) -> list[CriterionResult]:
        """One passing and one failing criterion."""
        return [
            CriterionResult(criterion=1, name="eigenvalue ladder", passed=True),
            CriterionResult(
                criterion=2, name="eigenfunction residuals", passed=False, errors=["too big"]
            ),
        ]

    def test_failures_propagate(self, outcomes: list[CriterionResult], tmp_path: Path) -> None:
        """A failing criterion fails the report and JUnit output is written."""
        junit = tmp_path / "junit.xml"
        with patch("voltprobe.runner.pipelines.run_acceptance", return_value=outcomes) as mock:
            report = run(_config(Command.REPORT), CommandOptions(quick=True, junit=junit))
        mock.assert_called_once()
        assert mock.call_args.kwargs["quick"] is True
        assert report.exit_code == 1
        assert report.errors == ["criterion 2: too big"]
        assert report.results["junit"] == str(junit)
        assert junit.exists()
        assert [c["criterion"] for c in report.results["criteria"]] == [1, 2]
