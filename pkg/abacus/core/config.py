# abacus/core/config.py
from __future__ import annotations

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


EnvType = Literal["local", "dev", "staging", "prod"]
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # App
    APP_NAME: str = "QuantumAbacus"
    APP_ENV: EnvType = "local"
    LOG_LEVEL: LogLevel = "WARNING"

    # Budgets
    NNZ_BUDGET: int = Field(default=2**20, description="Max total nonzeros of one constructed operator family")
    DENSE_MODES_LIMIT: int = Field(default=6, description="Above this many modes dense ladder matrices are refused")
    CLIFFORD_MAX_GENERATORS: int = 40
    SYM_GRADE_CAP: int = Field(default=16, description="Max grade for anything touching the 2^k tensor power")
    SYM_LADDER_GRADE_CAP: int = Field(default=60, description="Max grade for pure Sy_k operations")
    TAPE_GRADE_CAP: int = 16
    FACTORIAL_EXACT_LIMIT: int = 20
    INTERTWINER_NMAX_LIMIT: int = 20

    # Tolerances: construction-exact, derived algebra, cross-representation
    TOL_EXACT: float = 1e-15
    TOL_ALGEBRA: float = 1e-12
    TOL_CROSS: float = 1e-10
    UNITARY_TOL: float = 1e-12
    STAR_DEFLATION_TOL: float = 1e-12

    # Behaviour toggles
    TAPE_STRICT_GATES: bool = False
    TIME_SIGN: int = Field(default=1, description="+1 is the printed e^{+iEt} convention, -1 the usual e^{-iEt}")
    DEFAULT_SEED: int = 0

    # ---------- Validators ----------

    @field_validator(
        "NNZ_BUDGET",
        "DENSE_MODES_LIMIT",
        "CLIFFORD_MAX_GENERATORS",
        "SYM_GRADE_CAP",
        "SYM_LADDER_GRADE_CAP",
        "TAPE_GRADE_CAP",
        "FACTORIAL_EXACT_LIMIT",
        "INTERTWINER_NMAX_LIMIT",
    )
    @classmethod
    def _positive_int(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("budget values must be positive integers")
        return v

    @field_validator("TOL_EXACT", "TOL_ALGEBRA", "TOL_CROSS", "UNITARY_TOL", "STAR_DEFLATION_TOL")
    @classmethod
    def _positive_tol(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tolerances must be > 0")
        return v

    @field_validator("TIME_SIGN")
    @classmethod
    def _sign(cls, v: int) -> int:
        if v not in (1, -1):
            raise ValueError("TIME_SIGN must be +1 or -1")
        return v

    # ---------- Runtime validations ----------

    def validate_at_startup(self) -> None:
        """Fail fast with clear messages for inconsistent budgets."""
        problems: list[str] = []

        if self.SYM_GRADE_CAP > self.SYM_LADDER_GRADE_CAP:
            problems.append("SYM_GRADE_CAP must not exceed SYM_LADDER_GRADE_CAP.")
        if self.TAPE_GRADE_CAP > self.SYM_LADDER_GRADE_CAP:
            problems.append("TAPE_GRADE_CAP must not exceed SYM_LADDER_GRADE_CAP.")
        if not (self.TOL_EXACT <= self.TOL_ALGEBRA <= self.TOL_CROSS):
            problems.append("Tolerances must satisfy TOL_EXACT <= TOL_ALGEBRA <= TOL_CROSS.")
        # sqrt(n!) beyond 170! overflows a double
        if self.INTERTWINER_NMAX_LIMIT > 170:
            problems.append("INTERTWINER_NMAX_LIMIT above 170 overflows double precision.")

        if problems:
            raise RuntimeError("Config validation failed: " + " ".join(problems))


settings = Settings()
