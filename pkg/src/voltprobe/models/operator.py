"""Substitution maps and quadrature settings for V_phi."""

from __future__ import annotations

import math
from enum import Enum
from typing import overload

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

FloatArray = NDArray[np.float64]


class MapKind(str, Enum):
    """Families of substitution maps phi: [0, 1] -> [0, 1]."""

    POWER = "power"
    IDENTITY = "identity"
    FLIPPED_POWER = "flipped_power"
    SQUARE = "square"
    LINEAR = "linear"
    TABLE = "table"


class SubstitutionMap(BaseModel):
    """A substitution map phi for V_phi f(x) = int_0^{phi(x)} f(t) dt.

    Use the named constructors; ``table`` builds a monotone piecewise-linear
    map from knots covering [0, 1].
    """

    model_config = ConfigDict(frozen=True)

    kind: MapKind
    alpha: float | None = Field(default=None, gt=0.0, lt=1.0)
    slope: float | None = Field(default=None, gt=0.0, le=1.0)
    knots: tuple[float, ...] | None = None
    values: tuple[float, ...] | None = None

    @model_validator(mode="after")
    def _check_descriptor(self) -> SubstitutionMap:
        needs_alpha = self.kind in (MapKind.POWER, MapKind.FLIPPED_POWER)
        if needs_alpha and self.alpha is None:
            msg = f"{self.kind.value} map requires alpha"
            raise ValueError(msg)
        if self.kind is MapKind.LINEAR and self.slope is None:
            msg = "linear map requires slope"
            raise ValueError(msg)
        if self.kind is MapKind.TABLE:
            self._check_table()
        for end in (0.0, 1.0):
            image = float(self(end))
            if not 0.0 <= image <= 1.0:
                msg = f"{self.label} maps {end} to {image}, outside [0, 1]"
                raise ValueError(msg)
        return self

    def _check_table(self) -> None:
        if self.knots is None or self.values is None:
            msg = "table map requires knots and values"
            raise ValueError(msg)
        if len(self.knots) != len(self.values) or len(self.knots) < 2:  # noqa: PLR2004
            msg = "table map needs at least two (knot, value) pairs of equal length"
            raise ValueError(msg)
        if self.knots[0] != 0.0 or self.knots[-1] != 1.0:
            msg = "table knots must start at 0 and end at 1"
            raise ValueError(msg)
        if any(b <= a for a, b in zip(self.knots, self.knots[1:], strict=False)):
            msg = "table knots must increase strictly"
            raise ValueError(msg)
        if any(b < a for a, b in zip(self.values, self.values[1:], strict=False)):
            msg = "table values must be non-decreasing"
            raise ValueError(msg)

    @classmethod
    def power(cls, alpha: float) -> SubstitutionMap:
        return cls(kind=MapKind.POWER, alpha=alpha)

    @classmethod
    def identity(cls) -> SubstitutionMap:
        return cls(kind=MapKind.IDENTITY)

    @classmethod
    def flipped_power(cls, alpha: float) -> SubstitutionMap:
        """phi(x) = 1 - (1 - x)^{1/alpha}, the unitary image of the adjoint."""
        return cls(kind=MapKind.FLIPPED_POWER, alpha=alpha)

    @classmethod
    def square(cls) -> SubstitutionMap:
        return cls(kind=MapKind.SQUARE)

    @classmethod
    def linear(cls, slope: float) -> SubstitutionMap:
        return cls(kind=MapKind.LINEAR, slope=slope)

    @classmethod
    def table(cls, knots: list[float], values: list[float]) -> SubstitutionMap:
        return cls(kind=MapKind.TABLE, knots=tuple(knots), values=tuple(values))

    @property
    def label(self) -> str:
        if self.kind in (MapKind.POWER, MapKind.FLIPPED_POWER):
            return f"{self.kind.value}({self.alpha})"
        if self.kind is MapKind.LINEAR:
            return f"linear({self.slope})"
        return self.kind.value

    @overload
    def __call__(self, x: float) -> float: ...

    @overload
    def __call__(self, x: FloatArray) -> FloatArray: ...

    def __call__(self, x: float | FloatArray) -> float | FloatArray:
        arr = np.asarray(x, dtype=np.float64)
        out = self._evaluate(arr)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def _evaluate(self, x: FloatArray) -> FloatArray:
        match self.kind:
            case MapKind.POWER:
                assert self.alpha is not None
                return np.power(x, self.alpha)
            case MapKind.IDENTITY:
                return x.copy()
            case MapKind.FLIPPED_POWER:
                assert self.alpha is not None
                # 1 - (1-x)^{1/a} without cancellation near x = 0
                with np.errstate(divide="ignore"):
                    return -np.expm1(np.log1p(-x) / self.alpha)
            case MapKind.SQUARE:
                return x * x
            case MapKind.LINEAR:
                assert self.slope is not None
                return self.slope * x
            case MapKind.TABLE:
                assert self.knots is not None and self.values is not None
                return np.interp(x, self.knots, self.values)

    def slope_at_zero(self) -> float:
        """phi'(0); infinite for the power map."""
        match self.kind:
            case MapKind.POWER:
                return math.inf
            case MapKind.IDENTITY:
                return 1.0
            case MapKind.FLIPPED_POWER:
                assert self.alpha is not None
                return 1.0 / self.alpha
            case MapKind.SQUARE:
                return 0.0
            case MapKind.LINEAR:
                assert self.slope is not None
                return self.slope
            case MapKind.TABLE:
                assert self.knots is not None and self.values is not None
                return (self.values[1] - self.values[0]) / (self.knots[1] - self.knots[0])


class QuadratureSpec(BaseModel):
    """Graded-panel Gauss-Legendre settings.

    Panel breakpoints are (j / n_panels)^grading_exponent. Each panel is
    refined adaptively (order p against its two halves) until the estimate
    meets ``abs_tol`` or the panel budget runs out.
    """

    model_config = ConfigDict(frozen=True)

    panel_order: int = Field(default=16, ge=2, le=64)
    grading_exponent: float = Field(default=3.0, ge=1.0)
    n_panels: int = Field(default=64, ge=1)
    abs_tol: float = Field(default=1e-12, gt=0.0)
    rel_tol: float = Field(default=1e-14, ge=0.0)
    max_panels: int = Field(default=20_000, ge=1)
    max_depth: int = Field(default=100, ge=1)

    def breakpoints(self) -> FloatArray:
        """Graded breakpoints, first 0 and last 1."""
        j = np.arange(self.n_panels + 1, dtype=np.float64)
        points = (j / self.n_panels) ** self.grading_exponent
        points[-1] = 1.0
        return points

    def halved(self) -> QuadratureSpec:
        """The same settings with half the absolute tolerance."""
        return self.model_copy(update={"abs_tol": self.abs_tol / 2.0})
