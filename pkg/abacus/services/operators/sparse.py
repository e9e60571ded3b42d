# abacus/services/operators/sparse.py
from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import Any, Iterable, Literal, Optional, Tuple, Union

import numpy as np
import scipy.io
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, field_validator

from abacus.core.config import settings
from abacus.core.errors import BudgetExceeded, ShapeMismatch

logger = logging.getLogger(__name__)

BasisKind = Literal["qubits", "occupation", "monomial", "sym-tilde", "sym-e", "tensor", "empty"]


class BasisDescriptor(BaseModel):
    """Names the basis an operator acts on; labels are generated on demand."""

    model_config = ConfigDict(frozen=True)

    kind: BasisKind
    dim: int
    modes: Optional[int] = None
    n_max: Optional[int] = None
    grade: Optional[int] = None

    @classmethod
    def qubits(cls, m: int) -> "BasisDescriptor":
        return cls(kind="qubits", dim=2**m, modes=m)

    @classmethod
    def occupation(cls, modes: int, n_max: int, kind: BasisKind = "occupation") -> "BasisDescriptor":
        return cls(kind=kind, dim=(n_max + 1) ** modes, modes=modes, n_max=n_max)

    @classmethod
    def sym(cls, k: int, flavor: str = "tilde") -> "BasisDescriptor":
        if k < 0:
            return cls(kind="empty", dim=0, grade=k)
        return cls(kind="sym-e" if flavor == "e" else "sym-tilde", dim=k + 1, grade=k)

    @classmethod
    def tensor(cls, k: int) -> "BasisDescriptor":
        return cls(kind="tensor", dim=2**k, grade=k)

    def label(self, index: int) -> str:
        if not 0 <= index < self.dim:
            raise IndexError(f"basis index {index} out of range for dim={self.dim}")
        if self.kind in ("qubits", "tensor"):
            width = self.modes if self.kind == "qubits" else self.grade
            return format(index, f"0{width}b") if width else "vac"
        if self.kind in ("occupation", "monomial"):
            base = self.n_max + 1
            digits = []
            rem = index
            for _ in range(self.modes):
                digits.append(rem % base)
                rem //= base
            return "|" + ",".join(str(d) for d in reversed(digits)) + ">"
        j = index
        i = self.grade - j
        prefix = "e~" if self.kind == "sym-tilde" else "e"
        return f"{prefix}{{{i},{j}}}"

    def describe(self) -> str:
        extras = ",".join(
            f"{k}={v}" for k, v in (("modes", self.modes), ("n_max", self.n_max), ("grade", self.grade)) if v is not None
        )
        return f"{self.kind}[dim={self.dim}{',' + extras if extras else ''}]"


def _to_csr(value: Any) -> sp.csr_matrix:
    if isinstance(value, SparseComplexOperator):
        value = value.matrix
    if sp.issparse(value):
        return sp.csr_matrix(value, dtype=np.complex128, copy=True)
    return sp.csr_matrix(np.asarray(value, dtype=np.complex128))


class SparseComplexOperator(BaseModel):
    """Sparse complex matrix over explicitly described row and column bases. Read-only by convention."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: sp.csr_matrix
    row_basis: BasisDescriptor
    col_basis: BasisDescriptor

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce(cls, v):
        m = _to_csr(v)
        m.sum_duplicates()
        m.eliminate_zeros()
        return m

    @classmethod
    def on(cls, matrix: Any, basis: BasisDescriptor, col_basis: BasisDescriptor | None = None) -> "SparseComplexOperator":
        col = col_basis or basis
        m = _to_csr(matrix)
        if m.shape != (basis.dim, col.dim):
            raise ShapeMismatch(f"matrix shape {m.shape} does not fit bases {basis.describe()} x {col.describe()}")
        return cls(matrix=m, row_basis=basis, col_basis=col)

    # ---------- views ----------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    @property
    def nnz(self) -> int:
        return int(self.matrix.nnz)

    @property
    def H(self) -> "SparseComplexOperator":
        return SparseComplexOperator(
            matrix=self.matrix.conj().T.tocsr(), row_basis=self.col_basis, col_basis=self.row_basis
        )

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def max_abs(self) -> float:
        return max_abs(self.matrix)

    def column(self, index: int) -> np.ndarray:
        return np.asarray(self.matrix[:, index].toarray()).ravel()

    def entry(self, row: int, col: int) -> complex:
        return complex(self.matrix[row, col])

    def restrict(self, rows: Iterable[int], cols: Iterable[int]) -> np.ndarray:
        """Dense sub-block on the given row and column index lists."""
        r = np.asarray(list(rows), dtype=int)
        c = np.asarray(list(cols), dtype=int)
        return self.matrix[r][:, c].toarray()

    # ---------- algebra ----------

    def _check_same_shape(self, other: "SparseComplexOperator") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"operator shapes differ: {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if isinstance(other, SparseComplexOperator):
            if self.shape[1] != other.shape[0]:
                raise ShapeMismatch(f"cannot compose {self.shape} with {other.shape}")
            return SparseComplexOperator(
                matrix=self.matrix @ other.matrix, row_basis=self.row_basis, col_basis=other.col_basis
            )
        vec = np.asarray(other, dtype=np.complex128)
        if vec.shape[0] != self.shape[1]:
            raise ShapeMismatch(f"cannot apply {self.shape} operator to vector of length {vec.shape[0]}")
        return self.matrix @ vec

    def __add__(self, other: "SparseComplexOperator") -> "SparseComplexOperator":
        self._check_same_shape(other)
        return self._with(self.matrix + other.matrix)

    def __sub__(self, other: "SparseComplexOperator") -> "SparseComplexOperator":
        self._check_same_shape(other)
        return self._with(self.matrix - other.matrix)

    def __neg__(self) -> "SparseComplexOperator":
        return self._with(-self.matrix)

    def __mul__(self, scalar: complex) -> "SparseComplexOperator":
        return self._with(self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "SparseComplexOperator":
        return self._with(self.matrix / complex(scalar))

    def _with(self, matrix) -> "SparseComplexOperator":
        return SparseComplexOperator(matrix=matrix, row_basis=self.row_basis, col_basis=self.col_basis)


OperatorLike = Union[SparseComplexOperator, np.ndarray, sp.spmatrix]


# ---------- helpers ----------

def max_abs(x: Any) -> float:
    if isinstance(x, SparseComplexOperator):
        x = x.matrix
    if sp.issparse(x):
        return float(abs(x).max()) if x.nnz else 0.0
    arr = np.asarray(x)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def ensure_nnz_budget(nnz: int, what: str) -> None:
    if nnz > settings.NNZ_BUDGET:
        raise BudgetExceeded(f"{what} needs ~{nnz} nonzeros; NNZ_BUDGET={settings.NNZ_BUDGET}")


def kron_chain(factors: Iterable[Any]) -> sp.csr_matrix:
    """Left-to-right Kronecker product; the last factor is the rightmost (least significant) slot."""
    out = None
    for f in factors:
        f = _to_csr(f)
        out = f if out is None else sp.kron(out, f, format="csr")
    if out is None:
        return sp.identity(1, dtype=np.complex128, format="csr")
    return out


def identity_on(basis: BasisDescriptor) -> SparseComplexOperator:
    return SparseComplexOperator.on(sp.identity(basis.dim, dtype=np.complex128, format="csr"), basis)


def _binary(A: OperatorLike, B: OperatorLike, sign: int):
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"commutator needs equal square shapes, got {A.shape} and {B.shape}")
    if isinstance(A, SparseComplexOperator) or isinstance(B, SparseComplexOperator):
        if not isinstance(A, SparseComplexOperator):
            A = SparseComplexOperator.on(A, B.row_basis, B.col_basis)
        if not isinstance(B, SparseComplexOperator):
            B = SparseComplexOperator.on(B, A.row_basis, A.col_basis)
        return A @ B + (B @ A) * sign
    return A @ B + sign * (B @ A)


def commutator(A: OperatorLike, B: OperatorLike):
    """[A, B] = AB - BA."""
    return _binary(A, B, -1)


def anticommutator(A: OperatorLike, B: OperatorLike):
    """{A, B} = AB + BA."""
    return _binary(A, B, +1)


def export_matrix_market(op: SparseComplexOperator, target: Union[str, Path, io.BytesIO], name: str) -> None:
    """Write a complex general Matrix Market file with a comment naming the operator and its bases."""
    comment = f" operator: {name}; rows: {op.row_basis.describe()}; cols: {op.col_basis.describe()}"
    scipy.io.mmwrite(target, op.matrix.tocoo(), comment=comment, field="complex", symmetry="general")
    logger.debug("exported %s (%s, nnz=%d)", name, op.shape, op.nnz)
