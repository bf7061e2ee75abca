"""Report documents produced by the command pipelines."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class DataTable(BaseModel):
    """Plot-ready numeric table: one header row, numeric rows of equal width."""

    model_config = ConfigDict(frozen=True)

    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...] = ()

    @model_validator(mode="after")
    def _check_width(self) -> DataTable:
        width = len(self.header)
        if any(len(row) != width for row in self.rows):
            msg = f"every row must have {width} columns"
            raise ValueError(msg)
        return self


class CriterionResult(BaseModel):
    """Outcome of one acceptance criterion."""

    criterion: int = Field(ge=1)
    name: str
    passed: bool
    details: dict[str, Any] = Field(default_factory=dict)
    errors: list[str] = Field(default_factory=list)
    duration_seconds: float = Field(default=0.0, ge=0.0)

    def to_document(self) -> dict[str, Any]:
        """JSON form; the duration is left out so documents stay reproducible."""
        return {
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "errors": self.errors,
        }


class RunReport(BaseModel):
    """Result of one command: the JSON document plus an optional CSV table."""

    command: str
    params: dict[str, Any]
    results: Any = None
    tolerances: dict[str, Any]
    warnings: list[str] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list)
    passed: bool = True
    table: DataTable | None = None

    @property
    def exit_code(self) -> int:
        return 0 if self.passed and not self.errors else 1

    def to_document(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "tolerances": self.tolerances,
            "warnings": self.warnings,
            "errors": self.errors,
            "passed": self.passed and not self.errors,
        }
