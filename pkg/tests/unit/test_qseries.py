"""Tests for q-Pochhammer products, F_q and the polynomials P_n."""

import logging
import math

import mpmath
import pytest

from voltprobe.exceptions import ParameterError
from voltprobe.models.params import AlphaParam, Precision, QParam
from voltprobe.qseries import (
    PN_SOFT_LIMIT,
    compensated_sum,
    derivative_identity_diagnostic,
    fq_product,
    fq_root_check,
    fq_series,
    fq_series_coeff,
    pn_coeffs,
    pn_coeffs_extended,
    pn_eval,
    qpoch,
)


def _fq_reference(q: float, z: float) -> float:
    """F_q(z) = (qz; q)_inf in 50-digit arithmetic."""
    with mpmath.workdps(50):
        return float(mpmath.qp(mpmath.mpf(q) * z, mpmath.mpf(q)))


class TestCompensatedSum:
    """Tests for the fsum-backed summation record."""

    def test_exact_cancellation(self) -> None:
        """Large terms that cancel leave the small one intact."""
        result = compensated_sum([1e16, 1.0, -1e16])
        assert result.value == 1.0
        assert result.peak == 1e16
        assert result.count == 3

    def test_cancellation_ratio(self) -> None:
        """Peak over result, never below 1."""
        assert compensated_sum([1e6, -1e6 + 1.0]).cancellation_ratio == pytest.approx(1e6)
        assert compensated_sum([0.5, 0.25]).cancellation_ratio == 1.0

    def test_empty(self) -> None:
        """An empty sum is zero with nothing to cancel."""
        result = compensated_sum([])
        assert result.value == 0.0
        assert result.cancellation_ratio == 1.0
        assert result.rounding_bound() == 0.0


class TestQpoch:
    """Tests for the finite q-Pochhammer product."""

    def test_known_value(self) -> None:
        """(0.5; 0.5)_3 = 0.5 * 0.75 * 0.875."""
        assert qpoch(QParam(q=0.5), 3) == 0.328125

    def test_empty_product(self) -> None:
        """k = 0 gives 1."""
        assert qpoch(QParam(q=0.9), 0) == 1.0

    def test_negative_length_raises(self) -> None:
        """Negative k is rejected."""
        with pytest.raises(ParameterError):
            qpoch(QParam(q=0.5), -1)


class TestFq:
    """Tests for the product and series forms of F_q."""

    def test_product_known_value(self) -> None:
        """F_{1/2}(1) = prod (1 - 2^-k)."""
        assert fq_product(QParam(q=0.5), 1.0) == pytest.approx(0.2887880950866024, abs=1e-14)

    def test_series_known_value(self) -> None:
        """The series reproduces the same constant."""
        assert fq_series(QParam(q=0.5), 1.0) == pytest.approx(0.2887880950866024, abs=1e-14)

    @pytest.mark.parametrize(
        ("q", "z"),
        [(0.5, 1.0), (0.3, -2.5), (-0.6, 3.0), (0.8, 2.0), (0.9, -1.5), (0.75, 4.0)],
    )
    def test_forms_agree_with_reference(self, q: float, z: float) -> None:
        """Both forms match a 50-digit evaluation."""
        reference = _fq_reference(q, z)
        scale = max(1.0, abs(reference))
        assert abs(fq_product(QParam(q=q), z) - reference) <= 1e-12 * scale
        assert abs(fq_series(QParam(q=q), z) - reference) <= 1e-12 * scale

    def test_zero_argument(self) -> None:
        """F_q(0) = 1."""
        assert fq_product(QParam(q=0.4), 0.0) == 1.0
        assert fq_series(QParam(q=0.4), 0.0) == 1.0

    def test_product_exact_zero(self) -> None:
        """A vanishing factor makes the product exactly 0."""
        assert fq_product(QParam(q=0.5), 4.0) == 0.0

    def test_series_escalates_for_large_terms(self, caplog: pytest.LogCaptureFixture) -> None:
        """Large intermediate terms switch the sum to mpmath and stay accurate."""
        with caplog.at_level(logging.DEBUG, logger="voltprobe.qseries.products"):
            value = fq_series(QParam(q=0.9), 10.0)
        assert "escalating" in caplog.text
        assert value == pytest.approx(_fq_reference(0.9, 10.0), rel=1e-12)

    def test_extended_precision_matches(self) -> None:
        """Extended mode agrees with double mode on a benign argument."""
        double = fq_series(QParam(q=0.5), 1.0)
        extended = fq_series(QParam(q=0.5), 1.0, precision=Precision.EXTENDED)
        assert extended == pytest.approx(double, abs=1e-15)

    def test_nonpositive_tolerance_raises(self) -> None:
        """Tolerances must be positive."""
        with pytest.raises(ParameterError):
            fq_product(QParam(q=0.5), 1.0, tol=0.0)
        with pytest.raises(ParameterError):
            fq_series(QParam(q=0.5), 1.0, tol=-1.0)

    def test_series_coefficients(self) -> None:
        """Coefficient k is prod q^j / (q^j - 1)."""
        q = QParam(q=0.5)
        assert fq_series_coeff(q, 0) == 1.0
        assert fq_series_coeff(q, 1) == pytest.approx(-1.0)
        assert fq_series_coeff(q, 2) == pytest.approx(1.0 / 3.0)

    @pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
    def test_series_coefficients_match_qpochhammer(self, q: float) -> None:
        """Coefficient k is (-1)^k q^{k(k+1)/2} / (q; q)_k."""
        with mpmath.workdps(40):
            for k in range(16):
                q_mp = mpmath.mpf(q)
                expected = (-1) ** k * q_mp ** (k * (k + 1) // 2) / mpmath.qp(q_mp, q_mp, k)
                assert fq_series_coeff(QParam(q=q), k) == pytest.approx(float(expected), rel=1e-13)


class TestRootCheck:
    """Tests for F_alpha(alpha^(-n-1)) = 0."""

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_vanishes(self, alpha: float) -> None:
        """Every index up to 8 hits the vanishing factor."""
        for n in range(9):
            assert abs(fq_root_check(AlphaParam(alpha=alpha), n)) < 1e-10

    def test_negative_index_raises(self) -> None:
        """Negative n is rejected."""
        with pytest.raises(ParameterError):
            fq_root_check(AlphaParam(alpha=0.5), -1)


class TestPnCoefficients:
    """Tests for the P_n coefficient recursion."""

    def test_degree_two(self) -> None:
        """P_2 at q = 1/2 is 1 - 2z + (2/3) z^2."""
        p = pn_coeffs(QParam(q=0.5), 2)
        assert p.coeffs[0] == 1.0
        assert p.coeffs[1] == pytest.approx(-2.0)
        assert p.coeffs[2] == pytest.approx(2.0 / 3.0)

    def test_degree_zero(self) -> None:
        """P_0 = 1."""
        assert pn_coeffs(QParam(q=0.3), 0).coeffs == (1.0,)

    def test_eval_horner(self) -> None:
        """pn_eval matches the expanded polynomial."""
        p = pn_coeffs(QParam(q=0.5), 2)
        assert pn_eval(p, 1.5) == pytest.approx(1.0 - 3.0 + 1.5)

    def test_extended_matches_double(self) -> None:
        """mpmath coefficients round to the double ones."""
        q = QParam(q=0.7)
        double = pn_coeffs(q, 10).coeffs
        with mpmath.workdps(40):
            extended = pn_coeffs_extended(q, 10)
        for a, b in zip(double, extended, strict=True):
            assert a == pytest.approx(float(b), rel=1e-12)

    def test_soft_limit_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """Degrees past the soft limit log a warning."""
        with caplog.at_level(logging.WARNING):
            pn_coeffs(QParam(q=0.9), PN_SOFT_LIMIT + 1)
        assert "decades" in caplog.text

    def test_degree_caps(self) -> None:
        """Negative and overflowing degrees are rejected."""
        with pytest.raises(ParameterError):
            pn_coeffs(QParam(q=0.5), -1)
        with pytest.raises(ParameterError):
            pn_coeffs(QParam(q=0.5), 171)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.7, 0.9])
    def test_signs_alternate(self, q: float) -> None:
        """a_k (-1)^k > 0 for q in (0, 1)."""
        for n in (5, 17, 30):
            coeffs = pn_coeffs(QParam(q=q), n).coeffs
            assert all((-1) ** k * a > 0.0 for k, a in enumerate(coeffs))

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.7, 0.9])
    def test_coefficients_scale_series_coefficients(self, q: float) -> None:
        """a_k / (n! / (n-k)!) is the k-th Maclaurin coefficient of F_q."""
        qp = QParam(q=q)
        for n in (1, 8, 30):
            coeffs = pn_coeffs(qp, n).coeffs
            for k, a in enumerate(coeffs):
                assert a / math.perm(n, k) == pytest.approx(fq_series_coeff(qp, k), rel=1e-14)


class TestDerivativeIdentityDiagnostic:
    """Tests for the diagnostic that compares both sides without asserting them."""

    def test_reports_discrepancy(self) -> None:
        """Both sides are evaluated at every point and the gap is their max difference."""
        report = derivative_identity_diagnostic(QParam(q=0.5), 2, [0.5, 1.0, 2.0])
        assert len(report.lhs) == len(report.rhs) == 3
        gaps = [abs(a - b) for a, b in zip(report.lhs, report.rhs, strict=True)]
        assert report.max_discrepancy == max(gaps)
        assert math.isfinite(report.max_discrepancy)

    def test_rejects_zero_point(self) -> None:
        """x = 0 is excluded."""
        with pytest.raises(ParameterError):
            derivative_identity_diagnostic(QParam(q=0.5), 2, [0.0])
