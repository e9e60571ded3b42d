from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class RelationCheck(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    relation: str                 # e.g. "{a_i,a*_j}-delta", "[c_i,c*_j]|interior"
    i: Optional[int] = None
    j: Optional[int] = None
    max_abs_deviation: float
    passed: bool = Field(alias="pass")


class VerificationReport(BaseModel):
    suite: str                    # car, clifford, ccr, sym, stellar, tape, oscillator, ...
    tol: float
    parameters: Dict[str, float | int | str] = {}
    checks: List[RelationCheck] = []
    observations: Dict[str, float] = {}   # measured values that are not pass/fail, e.g. boundary defects

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, relation: str, deviation: float, *, i: int | None = None, j: int | None = None,
            tol: float | None = None) -> RelationCheck:
        limit = self.tol if tol is None else tol
        check = RelationCheck(relation=relation, i=i, j=j, max_abs_deviation=float(deviation),
                              passed=bool(deviation <= limit))
        self.checks.append(check)
        return check

    def worst(self, relation: str | None = None) -> float:
        devs = [c.max_abs_deviation for c in self.checks if relation is None or c.relation == relation]
        return max(devs) if devs else 0.0

    def dump(self) -> dict:
        data = self.model_dump(by_alias=True)
        data["pass"] = self.passed
        return data


class SuiteSummary(BaseModel):
    seed: int
    reports: List[VerificationReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def dump(self) -> dict:
        return {"seed": self.seed, "pass": self.passed, "suites": [r.dump() for r in self.reports]}
