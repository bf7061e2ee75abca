"""Command pipelines: one RunConfig in, one RunReport out.

Module errors never escape a pipeline; they become entries in the report's
``errors`` list, and warnings logged under the ``voltprobe`` logger during
the run are copied into ``warnings``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import ValidationError

from voltprobe.completeness import (
    distance_to_span,
    invariant_subspace_demo,
    muntz_sum,
    unit_witness,
)
from voltprobe.discretize import (
    build_matrix,
    default_grading,
    eigenvalues,
    export_matrix,
    match_ladder,
    matrix_norm,
)
from voltprobe.eigensystem import (
    eigenvalue,
    eigenvalue_sum,
    f_coeffs,
    f_eval,
    g_eval,
    g_eval_bounded,
    g_terms,
    s1_check,
)
from voltprobe.exceptions import PrecisionError, VoltProbeError
from voltprobe.models.completeness import FamilyKind
from voltprobe.models.config import Command, CommandOptions, PhiChoice, RunConfig
from voltprobe.models.discrete import Grid
from voltprobe.models.operator import SubstitutionMap
from voltprobe.models.params import AlphaParam, QParam
from voltprobe.models.report import DataTable, RunReport
from voltprobe.operator import DEFAULT_MESH, graded_mesh, residual_f, residual_g
from voltprobe.qseries import (
    derivative_identity_diagnostic,
    fq_product,
    fq_root_check,
    fq_series,
)
from voltprobe.reporting.junit_generator import JunitReportGenerator
from voltprobe.runner.acceptance import run_acceptance
from voltprobe.zeros import check_interlace, f_zeros, g_zero_scan, pn_roots

logger = logging.getLogger(__name__)

DEFAULT_MUNTZ_TERMS = 40
DEFAULT_SAMPLES = 200
SUBSPACE_DEPTH = 4
DIAGNOSTIC_POINTS = (0.5, 1.0, 2.0)


@dataclass
class _Draft:
    """Mutable report under construction."""

    results: dict[str, Any] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    passed: bool = True
    table: DataTable | None = None

    def fail(self, message: str) -> None:
        self.passed = False
        self.errors.append(message)


class _WarningCollector(logging.Handler):
    """Collect WARNING and above records emitted during a pipeline run."""

    def __init__(self) -> None:
        super().__init__(level=logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.messages.append(record.getMessage())


@contextmanager
def collect_warnings() -> Iterator[list[str]]:
    """Attach a collector to the package logger for the duration of the block."""
    collector = _WarningCollector()
    package_logger = logging.getLogger("voltprobe")
    package_logger.addHandler(collector)
    try:
        yield collector.messages
    finally:
        package_logger.removeHandler(collector)


def _phi(choice: PhiChoice, alpha: float) -> SubstitutionMap:
    match choice:
        case PhiChoice.POWER:
            return SubstitutionMap.power(alpha)
        case PhiChoice.FLIPPED:
            return SubstitutionMap.flipped_power(alpha)
        case PhiChoice.IDENTITY:
            return SubstitutionMap.identity()
        case PhiChoice.SQUARE:
            return SubstitutionMap.square()
        case PhiChoice.HALF:
            return SubstitutionMap.linear(0.5)


def _params(config: RunConfig, options: CommandOptions) -> dict[str, Any]:
    params: dict[str, Any] = {
        "alpha": config.alpha,
        "n": config.n,
        "grid_size": config.grid_size,
        "tol": config.tol,
        "precision": config.precision.value,
    }
    extra = options.model_dump(mode="json", exclude_none=True)
    params.update(extra)
    return params


def _spectrum(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    del options
    alpha = AlphaParam(alpha=config.alpha)
    values = [eigenvalue(alpha, k) for k in range(1, config.n + 1)]
    draft.results = {
        "eigenvalues": values,
        "spectral_radius": values[0],
        "partial_sum": eigenvalue_sum(alpha, config.n),
    }
    draft.table = DataTable(
        header=("n", "lambda"),
        rows=tuple((float(k), v) for k, v in enumerate(values, start=1)),
    )


def _eigenfun(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    f = f_coeffs(alpha, config.n)
    nodes, _ = graded_mesh(options.mesh or DEFAULT_SAMPLES, config.quadrature.grading_exponent)
    columns = [nodes, f_eval(f, nodes)]
    header = ["x", f"f_{config.n}"]
    draft.results = {"f": f.to_document()}
    try:
        g = g_terms(alpha, config.n, precision=config.precision)
    except PrecisionError as e:
        draft.fail(str(e))
    else:
        value, bound = g_eval_bounded(g, 1.0)
        draft.results["g"] = g.to_document()
        draft.results["g_at_one"] = {"value": value, "bound": bound}
        columns.append(g_eval(g, nodes))
        header.append(f"g_{config.n}")
    draft.table = DataTable(
        header=tuple(header),
        rows=tuple(tuple(float(v) for v in row) for row in np.column_stack(columns)),
    )


def _residuals(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    mesh = options.mesh or DEFAULT_MESH
    rows: list[tuple[float, ...]] = []
    entries: list[dict[str, Any]] = []
    for k in range(1, config.n + 1):
        rf = residual_f(alpha, k, config.quadrature, mesh)
        entry: dict[str, Any] = {"n": k, "residual_f": rf, "residual_g": None}
        if rf >= config.tol:
            draft.fail(f"residual_f(n={k}) = {rf:.3e} is not below {config.tol:.3e}")
        rg = math.nan
        try:
            rg = residual_g(alpha, k, config.quadrature, mesh, config.precision)
        except PrecisionError as e:
            draft.fail(str(e))
        else:
            entry["residual_g"] = rg
            if rg >= config.tolerances.residual_g:
                draft.fail(
                    f"residual_g(n={k}) = {rg:.3e} is not below "
                    f"{config.tolerances.residual_g:.3e}"
                )
        entries.append(entry)
        rows.append((float(k), rf, rg))
    draft.results = {"residuals": entries}
    draft.table = DataTable(header=("n", "residual_f", "residual_g"), rows=tuple(rows))


def _discretize(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    phi = _phi(options.phi, config.alpha)
    gamma = config.grading_exponent or default_grading(config.alpha)
    if options.phi is PhiChoice.FLIPPED:
        grid = Grid.symmetric_graded(config.grid_size, gamma)
    else:
        grid = Grid.graded(config.grid_size, gamma)
    matrix = build_matrix(phi, grid)
    values = eigenvalues(matrix)
    k = min(options.k or config.top_k, grid.size)
    top = [complex(v) for v in values[:k]]
    draft.results = {
        "phi": phi.label,
        "grid_size": grid.size,
        "grading_exponent": gamma,
        "eigenvalues": top,
        "moduli": [abs(v) for v in top],
        "spectral_radius": abs(top[0]),
        "matrix_norm": matrix_norm(matrix),
    }
    if options.phi in (PhiChoice.POWER, PhiChoice.FLIPPED):
        moduli, errors, artifacts = match_ladder(values, alpha, k, matrix_norm(matrix))
        draft.results["ladder"] = {
            "moduli": moduli,
            "relative_errors": errors,
            "artifacts": artifacts,
        }
    if options.export is not None:
        export_matrix(matrix, options.export)
        draft.results["export"] = str(options.export)
    draft.table = DataTable(
        header=("index", "re", "im", "modulus"),
        rows=tuple(
            (float(i), v.real, v.imag, abs(v)) for i, v in enumerate(top, start=1)
        ),
    )


def _zeros(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    q = QParam(q=options.q) if options.q is not None else alpha.as_q()
    polynomial_roots = pn_roots(q, config.n)
    if not polynomial_roots.certified_real:
        draft.fail(f"P_{config.n}(q={q.q}) roots could not be certified real")
    zeros = f_zeros(alpha, config.n)
    draft.results = {
        "pn_roots": polynomial_roots.to_document(),
        "f_zeros": zeros.to_document(),
    }
    if config.n >= 2:  # noqa: PLR2004
        interlaced = check_interlace(f_zeros(alpha, config.n - 1), zeros)
        draft.results["interlaces_previous"] = interlaced
        if not interlaced:
            draft.fail(f"zeros of f_{config.n - 1} and f_{config.n} do not interlace")
    try:
        scan = g_zero_scan(alpha, config.n, precision=config.precision)
    except PrecisionError as e:
        logger.warning("g_%d zero scan skipped: %s", config.n, e)
    else:
        draft.results["g_scan"] = scan.to_document()
    draft.table = DataTable(
        header=("index", "x"),
        rows=tuple((float(i), x) for i, x in enumerate(zeros.values, start=1)),
    )


def _qcheck(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    q = QParam(q=options.q if options.q is not None else config.alpha)
    product = fq_product(q, options.z)
    series = fq_series(q, options.z, precision=config.precision)
    gap = abs(product - series)
    limit = config.tolerances.qseries_agreement * max(1.0, abs(product))
    if gap > limit:
        draft.fail(f"F_q product and series differ by {gap:.3e} (limit {limit:.3e})")
    root_checks = [fq_root_check(alpha, k) for k in range(config.n + 1)]
    worst = max(abs(v) for v in root_checks)
    if worst >= config.tolerances.root_check:
        draft.fail(f"F_alpha(alpha^(-n)) root check reached {worst:.3e}")
    draft.results = {
        "q": q.q,
        "z": options.z,
        "product": product,
        "series": series,
        "difference": gap,
        "root_checks": root_checks,
    }
    s1 = s1_check(alpha, config.n, config.precision)
    draft.results["s1"] = s1
    if abs(s1 - 1.0) > config.tolerances.s1:
        draft.fail(f"S_1 = {s1!r} differs from 1 by more than {config.tolerances.s1:.1e}")
    if q.q != 0.0:
        diagnostic = derivative_identity_diagnostic(q, config.n, DIAGNOSTIC_POINTS)
        draft.results["derivative_identity"] = diagnostic.model_dump(mode="json")
    draft.table = DataTable(
        header=("n", "root_check"),
        rows=tuple((float(k), v) for k, v in enumerate(root_checks)),
    )


def _completeness(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    alpha = AlphaParam(alpha=config.alpha)
    report = distance_to_span(
        unit_witness,
        FamilyKind.F_FAMILY,
        alpha,
        config.n,
        config.quadrature,
        config.precision,
        witness_name="unit",
    )
    summary = muntz_sum(alpha, options.k or DEFAULT_MUNTZ_TERMS)
    if abs(summary.ratio_limit - alpha.alpha) > config.tolerances.muntz_ratio:
        draft.fail(f"Muntz ratio limit {summary.ratio_limit!r} is not within tolerance of alpha")
    compressed: list[dict[str, float]] = []
    for m in range(SUBSPACE_DEPTH + 1):
        radius = invariant_subspace_demo(alpha, m, config.grid_size, config.precision)
        bound = config.tolerances.subspace_slack * eigenvalue(alpha, m + 1)
        compressed.append({"m": m, "radius": radius, "bound": bound})
        if radius > bound:
            draft.fail(f"compressed spectral radius {radius:.3e} exceeds {bound:.3e} at m={m}")
    draft.results = {
        "f_family": report.to_document(),
        "muntz": summary.to_document(),
        "invariant_subspace": compressed,
    }
    draft.table = DataTable(
        header=("n", "distance"),
        rows=tuple((float(n), d) for n, d in report.distance_profile),
    )


def _report(config: RunConfig, options: CommandOptions, draft: _Draft) -> None:
    outcomes = run_acceptance(config, quick=options.quick)
    draft.results = {"criteria": [o.to_document() for o in outcomes]}
    if options.junit is not None:
        JunitReportGenerator().generate(outcomes, options.junit)
        draft.results["junit"] = str(options.junit)
    for outcome in outcomes:
        if not outcome.passed:
            draft.passed = False
            draft.errors.extend(f"criterion {outcome.criterion}: {e}" for e in outcome.errors)
    draft.table = DataTable(
        header=("criterion", "passed", "seconds"),
        rows=tuple(
            (float(o.criterion), float(o.passed), o.duration_seconds) for o in outcomes
        ),
    )


PIPELINES: dict[Command, Callable[[RunConfig, CommandOptions, _Draft], None]] = {
    Command.SPECTRUM: _spectrum,
    Command.EIGENFUN: _eigenfun,
    Command.RESIDUALS: _residuals,
    Command.DISCRETIZE: _discretize,
    Command.ZEROS: _zeros,
    Command.QCHECK: _qcheck,
    Command.COMPLETENESS: _completeness,
    Command.REPORT: _report,
}


def run(config: RunConfig, options: CommandOptions | None = None) -> RunReport:
    """Execute the pipeline named by ``config.command``.

    Args:
        config: Resolved run configuration.
        options: Command-specific options.

    Returns:
        The report document; ``exit_code`` is 1 when a contract failed.
    """
    options = options or CommandOptions()
    draft = _Draft()
    with collect_warnings() as warnings:
        try:
            PIPELINES[config.command](config, options, draft)
        except (VoltProbeError, ValidationError) as e:
            logger.debug("%s pipeline failed", config.command.value, exc_info=True)
            draft.fail(f"{type(e).__name__}: {e}")
    return RunReport(
        command=config.command.value,
        params=_params(config, options),
        results=draft.results,
        tolerances={"tol": config.tol, **config.tolerances.model_dump()},
        warnings=sorted(set(warnings)),
        errors=draft.errors,
        passed=draft.passed,
        table=draft.table,
    )
