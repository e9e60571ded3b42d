from typing import List

from pydantic import BaseModel


class DegeneracyRow(BaseModel):
    n: int                 # total quanta n0 + n1
    energy: float          # (n + 1) hbar omega
    multiplicity: int
    truncated: bool        # n > n_max: the cutoff removes states from this level


class DegeneracyTable(BaseModel):
    omega: float
    hbar: float
    n_max: int
    rows: List[DegeneracyRow]
