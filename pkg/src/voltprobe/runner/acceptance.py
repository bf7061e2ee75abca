"""Acceptance suite behind the ``report`` command.

Criteria are independent, so they run concurrently in worker threads
(numpy and scipy release the GIL inside their kernels); results are
assembled in criterion order.
"""

from __future__ import annotations

import asyncio
import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

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
    match_ladder,
    matrix_norm,
    spectral_radius,
)
from voltprobe.eigensystem import eigenvalue, g_eval_bounded, g_terms, s1_check
from voltprobe.exceptions import PrecisionError, VoltProbeError
from voltprobe.models.completeness import FamilyKind
from voltprobe.models.config import RunConfig
from voltprobe.models.discrete import Grid
from voltprobe.models.operator import SubstitutionMap
from voltprobe.models.params import AlphaParam, Precision, QParam
from voltprobe.models.report import CriterionResult
from voltprobe.operator import residual_f, residual_g
from voltprobe.qseries import fq_product, fq_root_check, fq_series
from voltprobe.zeros import check_interlace, f_zeros, pn_roots

logger = logging.getLogger(__name__)

LADDER_DEPTH = 5
E_INVERSE = math.exp(-1.0)


@dataclass(frozen=True)
class SuiteSettings:
    """Problem sizes for one run of the suite."""

    alphas: tuple[float, ...] = (0.25, 0.5, 0.75)
    matrix_size: int = 2048
    residual_f_max_n: int = 10
    residual_g_max_n: int = 6
    qgrid_points: int = 50
    root_check_max_n: int = 8
    pn_max_n: int = 30
    f_zero_max_n: int = 20
    gram_size: int = 12
    gram_alpha: float = 0.5
    muntz_terms: int = 40
    subspace_alpha: float = 0.5
    subspace_size: int = 1024
    subspace_depth: int = 4


FULL_SUITE = SuiteSettings()
QUICK_SUITE = SuiteSettings(
    alphas=(0.5,),
    matrix_size=256,
    residual_f_max_n=4,
    residual_g_max_n=3,
    qgrid_points=6,
    root_check_max_n=4,
    pn_max_n=10,
    f_zero_max_n=6,
    gram_size=12,
    subspace_size=256,
    subspace_depth=2,
)


class _Check:
    """Accumulates pass/fail and details for one criterion."""

    def __init__(self) -> None:
        self.details: dict[str, Any] = {}
        self.errors: list[str] = []

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            self.errors.append(message)


Criterion = Callable[[RunConfig, SuiteSettings, _Check], None]


def _eigenvalue_ladder(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    tol = config.tolerances
    for a in suite.alphas:
        alpha = AlphaParam(alpha=a)
        exact = [eigenvalue(alpha, n) for n in range(1, LADDER_DEPTH + 1)]
        check.require(
            all(v == (1 - a) * a ** (n - 1) for n, v in enumerate(exact, start=1)),
            f"closed-form ladder mismatch at alpha={a}",
        )
        grid = Grid.graded(suite.matrix_size, default_grading(a))
        matrix = build_matrix(SubstitutionMap.power(a), grid)
        moduli, errors, artifacts = match_ladder(
            eigenvalues(matrix), alpha, LADDER_DEPTH, matrix_norm(matrix)
        )
        check.details[f"alpha={a}"] = {
            "moduli": moduli,
            "relative_errors": errors,
            "artifacts": artifacts,
        }
        if len(errors) < LADDER_DEPTH:
            check.require(False, f"only {len(errors)} real eigenvalues matched at alpha={a}")
            continue
        check.require(
            errors[0] < tol.spectrum_top,
            f"top eigenvalue error {errors[0]:.3e} at alpha={a}",
        )
        check.require(
            errors[LADDER_DEPTH - 1] < tol.spectrum_fifth,
            f"fifth eigenvalue error {errors[LADDER_DEPTH - 1]:.3e} at alpha={a}",
        )


def _eigenfunction_residuals(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    limit = config.tolerances.residual_f
    for a in suite.alphas:
        alpha = AlphaParam(alpha=a)
        worst = max(
            residual_f(alpha, n, config.quadrature) for n in range(1, suite.residual_f_max_n + 1)
        )
        check.details[f"alpha={a}"] = {"max_residual_f": worst}
        check.require(worst < limit, f"residual_f reached {worst:.3e} at alpha={a}")


def _adjoint_precision(alpha: AlphaParam, n: int, precision: Precision) -> Precision:
    """The requested precision, or extended when double refuses g_n."""
    if precision is Precision.EXTENDED:
        return precision
    try:
        g_terms(alpha, n, precision=precision)
    except PrecisionError:
        logger.info("g_%d at alpha=%s escalated to extended precision", n, alpha.alpha)
        return Precision.EXTENDED
    return precision


def _adjoint_residuals(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    limit = config.tolerances.residual_g
    for a in suite.alphas:
        alpha = AlphaParam(alpha=a)
        residuals: list[float] = []
        endpoint_ok = True
        for n in range(1, suite.residual_g_max_n + 1):
            precision = _adjoint_precision(alpha, n, config.precision)
            residuals.append(residual_g(alpha, n, config.quadrature, precision=precision))
            value, bound = g_eval_bounded(g_terms(alpha, n, precision=precision), 1.0)
            endpoint_ok = endpoint_ok and abs(value) <= bound
        worst = max(residuals)
        check.details[f"alpha={a}"] = {
            "max_residual_g": worst,
            "g_at_one_within_bound": endpoint_ok,
        }
        check.require(worst < limit, f"residual_g reached {worst:.3e} at alpha={a}")
        check.require(endpoint_ok, f"g_n(1) exceeds its error bound at alpha={a}")


def _qseries_identity(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    tol = config.tolerances
    worst_gap = 0.0
    for qv in np.linspace(-0.95, 0.95, suite.qgrid_points):
        q = QParam(q=float(qv))
        for z in np.linspace(-4.0, 4.0, suite.qgrid_points):
            product = fq_product(q, float(z))
            gap = abs(product - fq_series(q, float(z))) / max(1.0, abs(product))
            worst_gap = max(worst_gap, gap)
    check.require(
        worst_gap <= tol.qseries_agreement, f"product/series gap reached {worst_gap:.3e}"
    )
    worst_root = 0.0
    worst_s1 = 0.0
    for a in suite.alphas:
        alpha = AlphaParam(alpha=a)
        for n in range(suite.root_check_max_n + 1):
            worst_root = max(worst_root, abs(fq_root_check(alpha, n)))
            worst_s1 = max(worst_s1, abs(s1_check(alpha, n, config.precision) - 1.0))
    check.require(worst_root < tol.root_check, f"root check reached {worst_root:.3e}")
    check.require(worst_s1 <= tol.s1, f"S_1 differs from 1 by {worst_s1:.3e}")
    check.details.update(
        {"max_relative_gap": worst_gap, "max_root_check": worst_root, "max_s1_error": worst_s1}
    )


def _zero_structure(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    tol = config.tolerances
    for a in suite.alphas:
        alpha = AlphaParam(alpha=a)
        uncertified = [
            n for n in range(1, suite.pn_max_n + 1) if not pn_roots(QParam(q=a), n).certified_real
        ]
        zero_sets = [f_zeros(alpha, n) for n in range(1, suite.f_zero_max_n + 1)]
        wrong_counts = [n for n, zeros in enumerate(zero_sets, start=1) if len(zeros) != n]
        broken = [
            n
            for n, (lower, upper) in enumerate(zip(zero_sets, zero_sets[1:], strict=False), start=1)
            if not check_interlace(lower, upper)
        ]
        e_gap = abs(zero_sets[1].values[1] - E_INVERSE)
        check.details[f"alpha={a}"] = {
            "uncertified_pn": uncertified,
            "wrong_zero_counts": wrong_counts,
            "interlacing_failures": broken,
            "second_zero_gap": e_gap,
        }
        check.require(not uncertified, f"P_n roots uncertified for n={uncertified} at alpha={a}")
        check.require(not wrong_counts, f"f_n zero counts wrong for n={wrong_counts} at alpha={a}")
        check.require(not broken, f"interlacing fails after n={broken} at alpha={a}")
        check.require(e_gap <= tol.zero_map, f"f_2 zero misses 1/e by {e_gap:.3e} at alpha={a}")


def _unitary_equivalence(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    limit = config.tolerances.flip_match
    for a in suite.alphas:
        power = build_matrix(
            SubstitutionMap.power(a), Grid.graded(suite.matrix_size, default_grading(a))
        )
        flipped = build_matrix(
            SubstitutionMap.flipped_power(a), Grid.symmetric_graded(suite.matrix_size, 2.0)
        )
        power_top = np.abs(eigenvalues(power)[:LADDER_DEPTH])
        flipped_top = np.abs(eigenvalues(flipped)[:LADDER_DEPTH])
        mismatch = float(np.max(np.abs(power_top - flipped_top) / power_top))
        check.details[f"alpha={a}"] = {
            "power_moduli": power_top.tolist(),
            "flipped_moduli": flipped_top.tolist(),
            "max_relative_mismatch": mismatch,
        }
        check.require(mismatch < limit, f"top moduli differ by {mismatch:.3e} at alpha={a}")


def _quasinilpotence(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    limit = config.tolerances.quasinilpotent_radius
    sizes = (suite.matrix_size // 4, suite.matrix_size // 2, suite.matrix_size)
    for phi in (SubstitutionMap.identity(), SubstitutionMap.square(), SubstitutionMap.linear(0.5)):
        radii = [spectral_radius(build_matrix(phi, Grid.graded(size, 2.0))) for size in sizes]
        check.details[phi.label] = {"sizes": list(sizes), "spectral_radii": radii}
        check.require(
            all(b <= a for a, b in zip(radii, radii[1:], strict=False)),
            f"spectral radius of {phi.label} does not decrease with N: {radii}",
        )
        check.require(radii[-1] < limit, f"spectral radius of {phi.label} is {radii[-1]:.3e}")


def _completeness_evidence(config: RunConfig, suite: SuiteSettings, check: _Check) -> None:
    tol = config.tolerances
    report = distance_to_span(
        unit_witness,
        FamilyKind.F_FAMILY,
        AlphaParam(alpha=suite.gram_alpha),
        suite.gram_size,
        config.quadrature,
        witness_name="unit",
    )
    check.details["f_family"] = report.to_document()
    check.require(
        report.final_distance < tol.completeness_distance,
        f"distance of 1 to span(f_1..f_{suite.gram_size}) is {report.final_distance:.3e}",
    )
    for a in suite.alphas:
        summary = muntz_sum(AlphaParam(alpha=a), suite.muntz_terms)
        gap = abs(summary.ratio_limit - a)
        check.details[f"muntz alpha={a}"] = summary.to_document()
        check.require(gap <= tol.muntz_ratio, f"Muntz ratio misses alpha={a} by {gap:.3e}")
    alpha = AlphaParam(alpha=suite.subspace_alpha)
    compressed: list[dict[str, float]] = []
    for m in range(suite.subspace_depth + 1):
        radius = invariant_subspace_demo(alpha, m, suite.subspace_size, config.precision)
        bound = tol.subspace_slack * eigenvalue(alpha, m + 1)
        compressed.append({"m": m, "radius": radius, "bound": bound})
        check.require(radius <= bound, f"compressed radius {radius:.3e} > {bound:.3e} at m={m}")
    check.details["invariant_subspace"] = compressed


CRITERIA: tuple[tuple[str, Criterion], ...] = (
    ("eigenvalue ladder", _eigenvalue_ladder),
    ("eigenfunction residuals", _eigenfunction_residuals),
    ("adjoint residuals", _adjoint_residuals),
    ("q-series identity", _qseries_identity),
    ("zero structure", _zero_structure),
    ("unitary equivalence", _unitary_equivalence),
    ("quasinilpotence", _quasinilpotence),
    ("completeness evidence", _completeness_evidence),
)


def _evaluate(
    index: int, name: str, criterion: Criterion, config: RunConfig, suite: SuiteSettings
) -> CriterionResult:
    check = _Check()
    start = time.perf_counter()
    try:
        criterion(config, suite, check)
    except VoltProbeError as e:
        logger.warning("criterion %d (%s) raised %s", index, name, type(e).__name__)
        check.errors.append(f"{type(e).__name__}: {e}")
    duration = time.perf_counter() - start
    logger.info("criterion %d (%s) finished in %.1f s", index, name, duration)
    return CriterionResult(
        criterion=index,
        name=name,
        passed=not check.errors,
        details=check.details,
        errors=check.errors,
        duration_seconds=duration,
    )


async def _run_all(config: RunConfig, suite: SuiteSettings) -> list[CriterionResult]:
    tasks = [
        asyncio.to_thread(_evaluate, index, name, criterion, config, suite)
        for index, (name, criterion) in enumerate(CRITERIA, start=1)
    ]
    return list(await asyncio.gather(*tasks))


def run_acceptance(config: RunConfig, quick: bool = False) -> list[CriterionResult]:
    """Run every acceptance criterion and return the outcomes in criterion order.

    Args:
        config: Run configuration supplying tolerances, quadrature and precision.
        quick: Use reduced problem sizes.
    """
    suite = QUICK_SUITE if quick else FULL_SUITE
    return asyncio.run(_run_all(config, suite))
