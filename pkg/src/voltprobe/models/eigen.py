"""Closed-form eigenfunctions of V_alpha and its adjoint."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from voltprobe.models.params import AlphaParam, Precision


class FEigenfunction(BaseModel):
    """Eigenfunction f_n(x) = x^beta (ln^{n-1} x + sum_k C_{n-1-k} ln^{n-1-k} x).

    ``coeffs`` lists C_{m-1}, C_{m-2}, ..., C_0 for m = n - 1, i.e. the bracket
    polynomial in ln x from the second-highest power down to the constant.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="1-based eigenindex")
    alpha: AlphaParam
    eigenvalue: float = Field(gt=0.0)
    coeffs: tuple[float, ...] = ()

    @model_validator(mode="after")
    def _check_length(self) -> FEigenfunction:
        if len(self.coeffs) != self.n - 1:
            msg = f"f_{self.n} needs {self.n - 1} coefficients, got {len(self.coeffs)}"
            raise ValueError(msg)
        return self

    @property
    def beta(self) -> float:
        return self.alpha.beta

    def to_document(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "n": self.n,
            "alpha": self.alpha.alpha,
            "lambda": self.eigenvalue,
            "beta": self.beta,
            "coeffs": list(self.coeffs),
        }


class GEigenfunction(BaseModel):
    """Adjoint eigenfunction g_n(x) = sum_j c_j x^{mu_j}, truncated.

    Term 0 is (1, 0). ``truncation_error_bound`` bounds the discarded tail on
    [0, 1]; ``cancellation_ratio`` is max |c_j| against the O(1) result.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    alpha: AlphaParam
    eigenvalue: float = Field(gt=0.0)
    terms: tuple[tuple[float, float], ...]
    truncation_error_bound: float = Field(ge=0.0)
    cancellation_ratio: float = Field(ge=1.0)
    precision: Precision = Precision.DOUBLE

    @model_validator(mode="after")
    def _check_terms(self) -> GEigenfunction:
        if not self.terms or self.terms[0] != (1.0, 0.0):
            msg = "the first adjoint term must be (1, 0)"
            raise ValueError(msg)
        exponents = [mu for _, mu in self.terms]
        if any(b <= a for a, b in zip(exponents, exponents[1:], strict=False)):
            msg = "adjoint exponents must increase strictly"
            raise ValueError(msg)
        return self

    @property
    def coefficients(self) -> list[float]:
        return [c for c, _ in self.terms]

    @property
    def exponents(self) -> list[float]:
        return [mu for _, mu in self.terms]

    def to_document(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "n": self.n,
            "alpha": self.alpha.alpha,
            "lambda": self.eigenvalue,
            "terms": [[c, mu] for c, mu in self.terms],
            "truncation_error_bound": self.truncation_error_bound,
            "cancellation_ratio": self.cancellation_ratio,
            "precision": self.precision.value,
        }
