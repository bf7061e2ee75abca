"""Zero sets of eigenfunctions and P_n polynomials."""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RootDomain(str, Enum):
    """Where the zeros live."""

    Z_DOMAIN = "z_domain"
    X_DOMAIN = "x_domain"


class RootSet(BaseModel):
    """Sorted real zeros with certification flags.

    ``endpoint_values`` repeats the zeros that sit on a domain endpoint
    (x = 1 for adjoint scans) so interior and endpoint counts stay separable.
    """

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...]
    domain: RootDomain
    certified_real: bool
    residuals: tuple[float, ...]
    exploratory: bool = False
    endpoint_values: tuple[float, ...] = ()
    notes: tuple[str, ...] = Field(default=())

    @model_validator(mode="after")
    def _check_values(self) -> RootSet:
        if len(self.residuals) != len(self.values):
            msg = "one residual per root is required"
            raise ValueError(msg)
        if self.certified_real and any(
            b <= a for a, b in zip(self.values, self.values[1:], strict=False)
        ):
            msg = "certified roots must increase strictly"
            raise ValueError(msg)
        return self

    @property
    def interior_count(self) -> int:
        return len(self.values) - len(self.endpoint_values)

    def __len__(self) -> int:
        return len(self.values)

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "domain": self.domain.value,
            "values": list(self.values),
            "residuals": list(self.residuals),
            "certified_real": self.certified_real,
        }
        if self.exploratory:
            doc["exploratory"] = True
            doc["endpoint_values"] = list(self.endpoint_values)
            doc["interior_count"] = self.interior_count
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc
