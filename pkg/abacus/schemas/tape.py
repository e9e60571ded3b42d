from __future__ import annotations

from typing import List

import numpy as np
from pydantic import BaseModel, model_validator

from abacus.core.errors import InvalidArgument
from abacus.schemas.sym import SymVectorPayload
from abacus.services.tape.graded_tape import AbacusVector, GradedVector


class GradePayload(BaseModel):
    k: int
    re: List[float]
    im: List[float]

    @model_validator(mode="after")
    def _lengths(self):
        if len(self.re) != len(self.im):
            raise ValueError("re and im must have the same length")
        return self


class TapePayload(BaseModel):
    K: int
    grades: List[GradePayload] = []

    @classmethod
    def from_tape(cls, psi: GradedVector) -> "TapePayload":
        grades = [
            GradePayload(k=k, re=psi.components[k].real.tolist(), im=psi.components[k].imag.tolist())
            for k in psi.grades
        ]
        return cls(K=psi.K, grades=grades)

    def to_tape(self) -> GradedVector:
        seen = [g.k for g in self.grades]
        if len(seen) != len(set(seen)):
            raise InvalidArgument("each grade may appear only once")
        comps = {g.k: np.asarray(g.re) + 1j * np.asarray(g.im) for g in self.grades}
        return GradedVector(K=self.K, components=comps)


class AbacusPayload(BaseModel):
    K: int
    grades: List[SymVectorPayload] = []

    @classmethod
    def from_abacus(cls, a: AbacusVector) -> "AbacusPayload":
        return cls(K=a.K, grades=[SymVectorPayload.from_vector(a.components[k]) for k in a.grades])
