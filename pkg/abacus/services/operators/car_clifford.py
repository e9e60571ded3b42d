# abacus/services/operators/car_clifford.py
"""
Clifford algebra generators and fermionic ladder operators (CAR).

Tensor-factor convention: factor 0 is the rightmost Kronecker slot, and mode i of a
FermionLadder is the qubit in slot i. The Jordan-Wigner string of mode i therefore
covers slots 0..i-1, to its right.
"""
from __future__ import annotations

import itertools
import logging
from typing import List, Literal, Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, model_validator

from abacus.core.config import settings
from abacus.core.errors import BudgetExceeded, InvalidArgument
from abacus.schemas.report import VerificationReport
from abacus.services.cache import cached_operator, key_tuple
from abacus.services.operators.sparse import (
    BasisDescriptor,
    SparseComplexOperator,
    anticommutator,
    ensure_nnz_budget,
    identity_on,
    kron_chain,
    max_abs,
)

logger = logging.getLogger(__name__)


# ========= Constants =========

_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)

# single-qubit ladder in the basis |0> = (1,0), |1> = (0,1)
_A = (_SX + 1j * _SY) / 2
_A_DAG = (_SX - 1j * _SY) / 2


def pauli_basis() -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(sigma_x, sigma_y, sigma_z, I) as fresh 2x2 complex arrays."""
    return _SX.copy(), _SY.copy(), _SZ.copy(), _I2.copy()


# ========= Domain types =========

class CliffordGenerators(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    mats: Tuple[SparseComplexOperator, ...]

    @property
    def dim(self) -> int:
        return 2 ** (self.n // 2)


class FermionLadder(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    modes: int
    a: Tuple[SparseComplexOperator, ...]
    a_dag: Tuple[SparseComplexOperator, ...]
    method: Literal["clifford", "jordan-wigner", "custom"] = "custom"
    # generator indices (2l, 2l+1) each mode was built from, when Clifford-derived
    generator_pairs: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _adjoint_pairs(self):
        if len(self.a) != self.modes or len(self.a_dag) != self.modes:
            raise ValueError(f"expected {self.modes} operators in a and a_dag")
        for i, (ai, adi) in enumerate(zip(self.a, self.a_dag)):
            if ai.shape != adi.shape:
                raise ValueError(f"a[{i}] and a_dag[{i}] shapes differ")
            if (adi.matrix != ai.H.matrix).nnz:
                raise ValueError(f"a_dag[{i}] is not the conjugate transpose of a[{i}]")
        return self

    @property
    def dim(self) -> int:
        return self.a[0].shape[0]

    def to_dense(self) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        if self.modes > settings.DENSE_MODES_LIMIT:
            raise BudgetExceeded(
                f"dense ladder storage refused above {settings.DENSE_MODES_LIMIT} modes (got {self.modes})"
            )
        return [x.toarray() for x in self.a], [x.toarray() for x in self.a_dag]


# ========= Construction =========

def _validate_generator_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2 or n % 2:
        raise InvalidArgument(f"Clifford generator count must be an even integer >= 2, got {n!r}")
    if n > settings.CLIFFORD_MAX_GENERATORS:
        raise BudgetExceeded(f"n={n} exceeds CLIFFORD_MAX_GENERATORS={settings.CLIFFORD_MAX_GENERATORS}")
    # every generator is a signed permutation matrix: dim nonzeros each
    ensure_nnz_budget(n * 2 ** (n // 2), f"Cl({n},C) generators")


@cached_operator(namespace="clifford", key_builder=lambda n: key_tuple("clifford", n))
def _clifford_matrices(n: int) -> Tuple[sp.csr_matrix, ...]:
    # Cl(2,C): e0 -> sigma_x, e1 -> sigma_y; the chirality e01 is realised as sigma_z
    gens: List[sp.csr_matrix] = [sp.csr_matrix(_SX), sp.csr_matrix(_SY)]
    e01 = sp.csr_matrix(_SZ)
    for _ in range(n // 2 - 1):
        dim = gens[0].shape[0]
        eye = sp.identity(dim, dtype=np.complex128, format="csr")
        # Cl(n+2) = Cl(n) (x) Cl(2): old generators pick up e01 in the new rightmost slot
        gens = [sp.kron(g, e01, format="csr") for g in gens] + [
            sp.kron(eye, _SX, format="csr"),
            sp.kron(eye, _SY, format="csr"),
        ]
    logger.debug("built Cl(%d,C): %d generators of dim %d", n, len(gens), gens[0].shape[0])
    return tuple(gens)


def clifford_generators(n: int) -> CliffordGenerators:
    _validate_generator_count(n)
    basis = BasisDescriptor.qubits(n // 2)
    mats = tuple(SparseComplexOperator.on(m, basis) for m in _clifford_matrices(int(n)))
    return CliffordGenerators(n=int(n), mats=mats)


def _validate_modes(n_modes: int) -> None:
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise InvalidArgument(f"n_modes must be a positive integer, got {n_modes!r}")


def fermion_ladder_from_clifford(n_modes: int) -> FermionLadder:
    """
    a = (e_{2l} + i e_{2l+1})/2 for each generator pair l of Cl(2m,C).
    Pair l is adjoined at recursion step l and sits in slot m-1-l, so it is mode m-1-l.
    """
    _validate_modes(n_modes)
    m = int(n_modes)
    gens = clifford_generators(2 * m)
    a: List[SparseComplexOperator] = []
    a_dag: List[SparseComplexOperator] = []
    pairs: List[Tuple[int, int]] = []
    for mode in range(m):
        pair = m - 1 - mode
        e_even, e_odd = gens.mats[2 * pair], gens.mats[2 * pair + 1]
        a.append((e_even + e_odd * 1j) / 2)
        a_dag.append((e_even - e_odd * 1j) / 2)
        pairs.append((2 * pair, 2 * pair + 1))
    return FermionLadder(modes=m, a=tuple(a), a_dag=tuple(a_dag), method="clifford", generator_pairs=tuple(pairs))


@cached_operator(namespace="jordan_wigner", key_builder=lambda m: key_tuple("jw", m))
def _jordan_wigner_matrices(m: int) -> Tuple[Tuple[sp.csr_matrix, ...], Tuple[sp.csr_matrix, ...]]:
    lowers, raises = [], []
    for i in range(m):
        left = [_I2] * (m - i - 1)
        right = [_SZ] * i
        lowers.append(kron_chain(left + [_A] + right))
        raises.append(kron_chain(left + [_A_DAG] + right))
    return tuple(lowers), tuple(raises)


def fermion_ladder_jordan_wigner(n_modes: int) -> FermionLadder:
    """a_i = 1 (x) ... (x) 1 (x) a (x) sigma_z (x) ... (x) sigma_z with i trailing sigma_z factors."""
    _validate_modes(n_modes)
    m = int(n_modes)
    # each string operator has 2^(m-1) nonzeros; 2m operators
    ensure_nnz_budget(m * 2**m, f"{m}-mode Jordan-Wigner ladder")
    basis = BasisDescriptor.qubits(m)
    lowers, raises = _jordan_wigner_matrices(m)
    return FermionLadder(
        modes=m,
        a=tuple(SparseComplexOperator.on(x, basis) for x in lowers),
        a_dag=tuple(SparseComplexOperator.on(x, basis) for x in raises),
        method="jordan-wigner",
    )


# ========= Verification =========

def verify_clifford(gens: CliffordGenerators, tol: float | None = None) -> VerificationReport:
    tol = settings.TOL_ALGEBRA if tol is None else tol
    report = VerificationReport(suite="clifford", tol=tol, parameters={"n": gens.n})
    eye = identity_on(gens.mats[0].row_basis)
    for i, j in itertools.combinations_with_replacement(range(gens.n), 2):
        target = eye * 2 if i == j else eye * 0
        report.add("{e_i,e_j}-2delta", max_abs(anticommutator(gens.mats[i], gens.mats[j]) - target), i=i, j=j)
    for i, e in enumerate(gens.mats):
        report.add("e_i-hermitian", max_abs(e - e.H), i=i)
    return report


def verify_car(ops: FermionLadder, tol: float | None = None) -> VerificationReport:
    """Max deviation of {a_i,a_j}, {a*_i,a*_j} and {a_i,a*_j} - delta_ij over every index pair."""
    tol = settings.TOL_ALGEBRA if tol is None else tol
    report = VerificationReport(suite="car", tol=tol, parameters={"modes": ops.modes, "method": ops.method})
    eye = identity_on(ops.a[0].row_basis)
    zero = eye * 0
    for i, j in itertools.product(range(ops.modes), repeat=2):
        report.add("{a_i,a_j}", max_abs(anticommutator(ops.a[i], ops.a[j]) - zero), i=i, j=j)
        report.add("{a*_i,a*_j}", max_abs(anticommutator(ops.a_dag[i], ops.a_dag[j]) - zero), i=i, j=j)
        delta = eye if i == j else zero
        report.add("{a_i,a*_j}-delta", max_abs(anticommutator(ops.a[i], ops.a_dag[j]) - delta), i=i, j=j)
    return report


def ladder_deviation(first: FermionLadder, second: FermionLadder) -> float:
    """Max entrywise difference between two ladders of the same size."""
    if first.modes != second.modes:
        raise InvalidArgument("ladders have different mode counts")
    worst = 0.0
    for x, y in zip(first.a + first.a_dag, second.a + second.a_dag):
        worst = max(worst, max_abs(x - y))
    return worst


def ladder_span_rank(ops: FermionLadder) -> int:
    """
    Rank of the span of the 4^m monomials prod_i w_i, w_i in {1, a_i, a*_i, a*_i a_i}.
    Equals 4^m exactly when the ladder generates the full matrix algebra.
    """
    if ops.modes > 3:
        raise BudgetExceeded("span rank check is limited to at most 3 modes")
    eye = identity_on(ops.a[0].row_basis)
    words = [(eye, ops.a[i], ops.a_dag[i], ops.a_dag[i] @ ops.a[i]) for i in range(ops.modes)]
    rows = []
    for choice in itertools.product(range(4), repeat=ops.modes):
        prod = eye
        for mode, w in enumerate(choice):
            prod = prod @ words[mode][w]
        rows.append(prod.toarray().ravel())
    return int(np.linalg.matrix_rank(np.vstack(rows)))
