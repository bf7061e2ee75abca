"""Parameter types shared by every module."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Precision(str, Enum):
    """Arithmetic used for cancellation-prone sums."""

    DOUBLE = "double"
    EXTENDED = "extended"


class QParam(BaseModel):
    """Base q of a q-series, |q| < 1."""

    model_config = ConfigDict(frozen=True)

    q: float = Field(gt=-1.0, lt=1.0, description="Base of the q-Pochhammer products")


class AlphaParam(BaseModel):
    """Exponent alpha of the operator V_alpha f(x) = int_0^{x^alpha} f(t) dt."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0, lt=1.0, description="Exponent in the open interval (0, 1)")

    @property
    def beta(self) -> float:
        """Leading exponent alpha / (1 - alpha) of every f_n."""
        return self.alpha / (1.0 - self.alpha)

    def as_q(self) -> QParam:
        """The same number viewed as a q-series base."""
        return QParam(q=self.alpha)
