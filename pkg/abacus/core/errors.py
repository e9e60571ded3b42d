# abacus/core/errors.py
from __future__ import annotations


class AbacusError(Exception):
    """Base error: a machine code plus a human detail, like an HTTP status with detail."""

    code: str = "abacus-error"
    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


class InvalidArgument(AbacusError, ValueError):
    code = "invalid-argument"


class BudgetExceeded(AbacusError):
    code = "budget-exceeded"


class ShapeMismatch(AbacusError, ValueError):
    code = "shape-mismatch"
