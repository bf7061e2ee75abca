"""Compensated summation for alternating series."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

EPS = 2.0**-52


@dataclass(frozen=True)
class CompensatedSum:
    """Exactly rounded sum of floating terms plus what it cost.

    ``math.fsum`` removes the summation error entirely, so the remaining error
    comes from the terms themselves; ``rounding_bound`` charges each term a
    few ulps of its own magnitude.
    """

    value: float
    magnitude: float
    peak: float
    count: int

    @property
    def cancellation_ratio(self) -> float:
        """Peak term over the result (1 when nothing cancels)."""
        if self.peak == 0.0:
            return 1.0
        return max(1.0, self.peak / max(abs(self.value), math.ulp(0.0)))

    def rounding_bound(self, ulps_per_term: float = 4.0) -> float:
        return ulps_per_term * EPS * self.magnitude


def compensated_sum(terms: Iterable[float]) -> CompensatedSum:
    """Sum ``terms`` with ``math.fsum`` and record their magnitudes."""
    values = list(terms)
    magnitudes = [abs(t) for t in values]
    return CompensatedSum(
        value=math.fsum(values),
        magnitude=math.fsum(magnitudes),
        peak=max(magnitudes, default=0.0),
        count=len(values),
    )
