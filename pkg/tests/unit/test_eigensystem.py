"""Tests for the closed-form eigenvalues and eigenfunctions."""

import logging
import math

import mpmath
import numpy as np
import pytest

from voltprobe.eigensystem import (
    G_CANCELLATION_LIMIT,
    eigenvalue,
    eigenvalue_sum,
    f_coeffs,
    f_eval,
    g_eval,
    g_eval_bounded,
    g_terms,
    s1_check,
)
from voltprobe.exceptions import ParameterError, PrecisionError
from voltprobe.models.params import AlphaParam, Precision

HALF = AlphaParam(alpha=0.5)


class TestEigenvalues:
    """Tests for the eigenvalue ladder."""

    def test_ladder(self) -> None:
        """lambda_n = (1 - alpha) alpha^(n-1)."""
        assert [eigenvalue(HALF, n) for n in range(1, 6)] == [0.5, 0.25, 0.125, 0.0625, 0.03125]

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_partial_sum_telescopes(self, alpha: float) -> None:
        """The first N eigenvalues sum to 1 - alpha^N."""
        a = AlphaParam(alpha=alpha)
        assert eigenvalue_sum(a, 30) == pytest.approx(1.0 - alpha**30, abs=1e-15)

    def test_index_must_be_positive(self) -> None:
        """Indices are 1-based."""
        with pytest.raises(ParameterError):
            eigenvalue(HALF, 0)

    def test_alpha_validated(self) -> None:
        """alpha outside (0, 1) is rejected on construction."""
        with pytest.raises(ValueError):
            AlphaParam(alpha=1.0)


class TestFEigenfunctions:
    """Tests for f_n coefficients and evaluation."""

    def test_first_is_pure_power(self) -> None:
        """f_1 = x^beta with no logarithmic terms."""
        f = f_coeffs(HALF, 1)
        assert f.coeffs == ()
        assert f_eval(f, 0.25) == pytest.approx(0.25)

    def test_third_coefficients(self) -> None:
        """f_3 at alpha = 1/2 is x (ln^2 x + 2 ln x + 2/3)."""
        f = f_coeffs(HALF, 3)
        assert f.coeffs == pytest.approx((2.0, 2.0 / 3.0))
        x = 0.3
        t = math.log(x)
        assert f_eval(f, x) == pytest.approx(x * (t * t + 2.0 * t + 2.0 / 3.0), rel=1e-14)

    def test_second_vanishes_at_inverse_e(self) -> None:
        """f_2 = x^beta (ln x + 1) for every alpha."""
        for alpha in (0.2, 0.5, 0.8):
            f = f_coeffs(AlphaParam(alpha=alpha), 2)
            assert f.coeffs == pytest.approx((1.0,))
            assert abs(f_eval(f, math.exp(-1.0))) < 1e-15

    def test_zero_at_origin(self) -> None:
        """f_n(0) = 0 exactly."""
        assert f_eval(f_coeffs(HALF, 4), 0.0) == 0.0

    def test_second_constant_for_random_alpha(self) -> None:
        """C_0 = 1 in f_2 for any alpha."""
        rng = np.random.default_rng(20240601)
        for alpha in rng.uniform(0.01, 0.99, size=20):
            assert f_coeffs(AlphaParam(alpha=float(alpha)), 2).coeffs == pytest.approx((1.0,))

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_continuous_at_endpoints(self, alpha: float) -> None:
        """f_4 tends to 0 at the origin and to f_4(1) at 1."""
        f = f_coeffs(AlphaParam(alpha=alpha), 4)
        near_zero = [abs(f_eval(f, 10.0**-k)) for k in (12, 16, 20, 30, 40)]
        assert all(b < a for a, b in zip(near_zero, near_zero[1:], strict=False))
        assert near_zero[-1] < 1e-3
        at_one = f_eval(f, 1.0)
        near_one = [abs(at_one - f_eval(f, 1.0 - 10.0**-k)) for k in (2, 4, 6, 8)]
        assert all(b < a for a, b in zip(near_one, near_one[1:], strict=False))
        assert near_one[-1] < 1e-6

    def test_vectorized(self) -> None:
        """Arrays evaluate elementwise and keep their shape."""
        f = f_coeffs(HALF, 3)
        xs = np.array([[0.1, 0.5], [0.9, 1.0]])
        values = f_eval(f, xs)
        assert values.shape == (2, 2)
        assert values[1, 1] == pytest.approx(2.0 / 3.0)
        assert values[0, 0] == pytest.approx(f_eval(f, 0.1))

    def test_outside_unit_interval_raises(self) -> None:
        """Evaluation is restricted to [0, 1]."""
        with pytest.raises(ParameterError):
            f_eval(f_coeffs(HALF, 2), 1.5)

    def test_document(self) -> None:
        """The document carries lambda and beta."""
        doc = f_coeffs(HALF, 2).to_document()
        assert doc["lambda"] == 0.25
        assert doc["beta"] == 1.0
        assert doc["coeffs"] == [1.0]


class TestGEigenfunctions:
    """Tests for the adjoint series g_n."""

    def test_first_terms(self) -> None:
        """g_1 at alpha = 1/2 starts 1 - 2 x^2 + (4/3) x^6."""
        g = g_terms(HALF, 1)
        assert g.terms[0] == (1.0, 0.0)
        assert g.terms[1] == pytest.approx((-2.0, 2.0))
        assert g.terms[2] == pytest.approx((4.0 / 3.0, 6.0))

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_vanishes_at_one(self, alpha: float) -> None:
        """g_n(1) = 0 within the reported bound for n <= 8, escalating when double refuses."""
        a = AlphaParam(alpha=alpha)
        for n in range(1, 9):
            try:
                g = g_terms(a, n)
            except PrecisionError:
                g = g_terms(a, n, precision=Precision.EXTENDED)
            value, bound = g_eval_bounded(g, 1.0)
            assert abs(value) <= bound

    def test_small_alpha_needs_extended_precision(self) -> None:
        """At alpha = 0.25 the higher g_n are refused in double and vanish in extended."""
        a = AlphaParam(alpha=0.25)
        for n in (7, 8):
            with pytest.raises(PrecisionError):
                g_terms(a, n)
            g = g_terms(a, n, precision=Precision.EXTENDED)
            value, bound = g_eval_bounded(g, 1.0)
            assert abs(value) <= bound

    def test_one_at_origin(self) -> None:
        """Only the constant term survives at x = 0."""
        assert g_eval(g_terms(HALF, 3), 0.0) == 1.0

    def test_series_matches_mpmath(self) -> None:
        """The rounded coefficients reproduce a 40-digit evaluation of the series."""
        g = g_terms(HALF, 2)
        x = 0.7
        with mpmath.workdps(40):
            a = mpmath.mpf(0.5)
            m = 1
            total = mpmath.mpf(0)
            poch = mpmath.mpf(1)
            for j in range(80):
                if j:
                    poch *= 1 - a**j
                mu = (1 - a**j) / ((1 - a) * a**j)
                total += (-1) ** j * a ** (mpmath.mpf(j * (j - 1 - 2 * m)) / 2) / poch * x**mu
        assert g_eval(g, x) == pytest.approx(float(total), abs=1e-13)

    def test_double_precision_refuses_large_cancellation(self) -> None:
        """Peak coefficients above the budget raise in double precision."""
        with pytest.raises(PrecisionError):
            g_terms(AlphaParam(alpha=0.1), 6)

    def test_extended_precision_accepts(self) -> None:
        """The same g_n builds in extended precision and still vanishes at 1."""
        g = g_terms(AlphaParam(alpha=0.1), 6, precision=Precision.EXTENDED)
        assert g.cancellation_ratio > G_CANCELLATION_LIMIT
        assert abs(g_eval(g, 1.0)) < 1e-8

    def test_nonpositive_tolerance_raises(self) -> None:
        """The truncation tolerance must be positive."""
        with pytest.raises(ParameterError):
            g_terms(HALF, 1, tol=0.0)


class TestS1:
    """Tests for the S_1 = 1 identity."""

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_equals_one(self, alpha: float) -> None:
        """S_1 is 1 to 1e-9 for every index up to 8."""
        for n in range(9):
            assert s1_check(AlphaParam(alpha=alpha), n) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize(("alpha", "n"), [(0.25, 3), (0.25, 5), (0.5, 7), (0.5, 8)])
    def test_double_agrees_with_extended(self, alpha: float, n: int) -> None:
        """The double-precision request returns the extended value to 1e-12."""
        a = AlphaParam(alpha=alpha)
        assert s1_check(a, n) == pytest.approx(s1_check(a, n, Precision.EXTENDED), abs=1e-12)

    def test_escalates_when_rounding_exceeds_budget(
        self, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Large coefficients send the double-precision request to mpmath."""
        with caplog.at_level(logging.DEBUG, logger="voltprobe.eigensystem.g_family"):
            value = s1_check(HALF, 8)
        assert "escalating" in caplog.text
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_benign_index_stays_in_double(self, caplog: pytest.LogCaptureFixture) -> None:
        """Small indices are summed in double precision."""
        with caplog.at_level(logging.DEBUG, logger="voltprobe.eigensystem.g_family"):
            s1_check(AlphaParam(alpha=0.75), 0)
        assert "escalating" not in caplog.text

    def test_extended_matches(self) -> None:
        """Extended summation gives the same value."""
        assert s1_check(HALF, 2, Precision.EXTENDED) == pytest.approx(1.0, abs=1e-12)

    def test_negative_index_raises(self) -> None:
        """The index is non-negative."""
        with pytest.raises(ParameterError):
            s1_check(HALF, -1)
