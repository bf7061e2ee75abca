"""Finite q-polynomials P_n."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PnPolynomial(BaseModel):
    """P_n(z) = sum_k a_k z^k with a_k = n!/(n-k)! q^{k(k+1)/2} / ((q-1)...(q^k-1))."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    q: float = Field(gt=-1.0, lt=1.0)
    coeffs: tuple[float, ...] = Field(description="a_0 .. a_n, lowest degree first")

    @model_validator(mode="after")
    def _check_shape(self) -> PnPolynomial:
        if len(self.coeffs) != self.n + 1:
            msg = f"P_{self.n} needs {self.n + 1} coefficients, got {len(self.coeffs)}"
            raise ValueError(msg)
        if self.coeffs[0] != 1.0:
            msg = f"a_0 must be 1, got {self.coeffs[0]}"
            raise ValueError(msg)
        return self

    def __call__(self, z: float) -> float:
        value = 0.0
        for a in reversed(self.coeffs):
            value = value * z + a
        return value
