from __future__ import annotations

from typing import List, Literal

from pydantic import BaseModel, model_validator

from abacus.services.symmetric.sym_space import SymVector


class SymVectorPayload(BaseModel):
    k: int
    flavor: Literal["tilde", "e"] = "tilde"
    re: List[float]
    im: List[float]

    @model_validator(mode="after")
    def _lengths(self):
        if len(self.re) != len(self.im):
            raise ValueError("re and im must have the same length")
        return self

    @classmethod
    def from_vector(cls, v: SymVector) -> "SymVectorPayload":
        return cls(k=v.k, flavor=v.flavor, re=v.coeffs.real.tolist(), im=v.coeffs.imag.tolist())
