from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, field_validator

OutputFormat = Literal["json", "plain", "matrix-market"]


class RunConfig(BaseModel):
    """Options shared by every subcommand, carried on the click context."""

    subcommand: Optional[str] = None
    modes: Optional[int] = None
    nmax: Optional[int] = None
    grade: Optional[int] = None
    k: Optional[int] = None
    tol: Optional[float] = None
    format: OutputFormat = "json"
    export: Optional[str] = None
    seed: int = 0

    @field_validator("tol")
    @classmethod
    def _positive_tol(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError("tol must be > 0")
        return v

    @field_validator("modes", "nmax", "grade", "k")
    @classmethod
    def _non_negative(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError("size parameters must be non-negative")
        return v
