# abacus/services/operators/fock_ccr.py
"""
Truncated bosonic ladders (CCR) in the occupation-number basis, the differential
representation on monomials, and the diagonal intertwiner between the two.

Truncation rule: c* annihilates the top state, so c* stays the exact adjoint of c and
the defect of [c, c*] sits on the cutoff boundary.
"""
from __future__ import annotations

import itertools
import logging
import math
from typing import Dict, List, Literal, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from abacus.core.config import settings
from abacus.core.errors import BudgetExceeded, InvalidArgument
from abacus.schemas.report import VerificationReport
from abacus.services.cache import cached_operator, key_tuple
from abacus.services.operators.sparse import (
    BasisDescriptor,
    SparseComplexOperator,
    commutator,
    ensure_nnz_budget,
    identity_on,
    kron_chain,
    max_abs,
)

logger = logging.getLogger(__name__)


# ========= Domain types =========

class FockCutoff(BaseModel):
    model_config = ConfigDict(frozen=True)

    modes: int
    n_max: int

    @field_validator("modes", "n_max")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"modes and n_max must be >= 1, got {v}")
        return v

    @property
    def dim(self) -> int:
        return (self.n_max + 1) ** self.modes


class OccupationBasis(BaseModel):
    """Occupation tuples in lexicographic order, mode 0 slowest."""

    model_config = ConfigDict(frozen=True)

    cutoff: FockCutoff

    @property
    def dim(self) -> int:
        return self.cutoff.dim

    def index(self, occupations: Sequence[int]) -> int:
        if len(occupations) != self.cutoff.modes:
            raise InvalidArgument(f"expected {self.cutoff.modes} occupations, got {len(occupations)}")
        base = self.cutoff.n_max + 1
        idx = 0
        for n in occupations:
            if not 0 <= n <= self.cutoff.n_max:
                raise InvalidArgument(f"occupation {n} outside 0..{self.cutoff.n_max}")
            idx = idx * base + int(n)
        return idx

    def occupations(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.dim:
            raise InvalidArgument(f"index {index} outside 0..{self.dim - 1}")
        base = self.cutoff.n_max + 1
        digits = []
        for _ in range(self.cutoff.modes):
            digits.append(index % base)
            index //= base
        return tuple(reversed(digits))

    def table(self) -> np.ndarray:
        """(dim, modes) integer array of occupation tuples in index order."""
        return np.array(list(itertools.product(range(self.cutoff.n_max + 1), repeat=self.cutoff.modes)), dtype=int)

    def descriptor(self, kind: Literal["occupation", "monomial"] = "occupation") -> BasisDescriptor:
        return BasisDescriptor.occupation(self.cutoff.modes, self.cutoff.n_max, kind=kind)


class BosonLadder(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: OccupationBasis
    c: Tuple[SparseComplexOperator, ...]
    c_dag: Tuple[SparseComplexOperator, ...]
    representation: Literal["occupation", "monomial"] = "occupation"

    @model_validator(mode="after")
    def _shape_and_adjoint(self):
        m = self.basis.cutoff.modes
        if len(self.c) != m or len(self.c_dag) != m:
            raise ValueError(f"expected {m} operators in c and c_dag")
        # the monomial basis is not orthonormal, so adjointness is an occupation-basis invariant only
        if self.representation == "occupation":
            for i, (ci, cdi) in enumerate(zip(self.c, self.c_dag)):
                if (cdi.matrix != ci.H.matrix).nnz:
                    raise ValueError(f"c_dag[{i}] is not the conjugate transpose of c[{i}]")
        return self

    @property
    def modes(self) -> int:
        return self.basis.cutoff.modes


# ========= Single-mode blocks =========

def _lowering_1d(n_max: int) -> sp.csr_matrix:
    # c|n> = sqrt(n)|n-1>
    return sp.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), offsets=1, format="csr", dtype=np.complex128)


def _derivative_1d(n_max: int) -> sp.csr_matrix:
    # D x^n = n x^(n-1)
    return sp.diags(np.arange(1, n_max + 1, dtype=float), offsets=1, format="csr", dtype=np.complex128)


def _position_1d(n_max: int) -> sp.csr_matrix:
    # X x^n = x^(n+1), X x^n_max = 0
    return sp.diags(np.ones(n_max), offsets=-1, format="csr", dtype=np.complex128)


def _embed_mode(block: sp.csr_matrix, mode: int, modes: int, n_max: int) -> sp.csr_matrix:
    eye = sp.identity(n_max + 1, dtype=np.complex128, format="csr")
    return kron_chain([block if k == mode else eye for k in range(modes)])


def _check_cutoff_budget(cutoff: FockCutoff, what: str) -> None:
    # each mode operator has at most n_max nonzeros per (n_max+1) states, 2m operators
    ensure_nnz_budget(2 * cutoff.modes * cutoff.dim, what)


# ========= Operations =========

@cached_operator(namespace="boson_ladder", key_builder=lambda m, n: key_tuple("boson", m, n))
def _boson_matrices(modes: int, n_max: int) -> Tuple[sp.csr_matrix, ...]:
    low = _lowering_1d(n_max)
    return tuple(_embed_mode(low, i, modes, n_max) for i in range(modes))


def boson_ladder(cutoff: FockCutoff) -> BosonLadder:
    _check_cutoff_budget(cutoff, f"boson ladder m={cutoff.modes}, n_max={cutoff.n_max}")
    basis = OccupationBasis(cutoff=cutoff)
    desc = basis.descriptor()
    c = tuple(SparseComplexOperator.on(x, desc) for x in _boson_matrices(cutoff.modes, cutoff.n_max))
    logger.debug("boson ladder m=%d n_max=%d dim=%d", cutoff.modes, cutoff.n_max, cutoff.dim)
    return BosonLadder(basis=basis, c=c, c_dag=tuple(x.H for x in c))


def number_operator(ops: BosonLadder, mode: int) -> SparseComplexOperator:
    if not 0 <= mode < ops.modes:
        raise InvalidArgument(f"mode {mode} outside 0..{ops.modes - 1}")
    return ops.c_dag[mode] @ ops.c[mode]


def interior_projector(basis: OccupationBasis) -> SparseComplexOperator:
    """Diagonal projector onto tuples with every n_k <= n_max - 1."""
    inside = np.all(basis.table() < basis.cutoff.n_max, axis=1).astype(np.complex128)
    return SparseComplexOperator.on(sp.diags(inside, format="csr"), basis.descriptor())


def interior_indices(basis: OccupationBasis) -> List[int]:
    return [int(i) for i in np.flatnonzero(np.all(basis.table() < basis.cutoff.n_max, axis=1))]


def verify_ccr(ops: BosonLadder, tol: float | None = None) -> VerificationReport:
    """
    (a) [c_i,c_j] = [c*_i,c*_j] = 0 everywhere, (b) [c_i,c*_j] = delta_ij on the interior block,
    (c) every commutator is traceless. The boundary defect of [c_i,c*_i] is recorded as an observation.
    """
    tol = settings.TOL_ALGEBRA if tol is None else tol
    cutoff = ops.basis.cutoff
    report = VerificationReport(
        suite="ccr", tol=tol, parameters={"modes": cutoff.modes, "n_max": cutoff.n_max, "rep": ops.representation}
    )
    desc = ops.c[0].row_basis
    eye = identity_on(desc)
    proj = interior_projector(ops.basis)
    top = ops.basis.index([cutoff.n_max] * cutoff.modes)
    for i, j in itertools.product(range(cutoff.modes), repeat=2):
        cc = commutator(ops.c[i], ops.c[j])
        dd = commutator(ops.c_dag[i], ops.c_dag[j])
        cd = commutator(ops.c[i], ops.c_dag[j])
        report.add("[c_i,c_j]", max_abs(cc), i=i, j=j, tol=min(tol, settings.TOL_EXACT))
        report.add("[c*_i,c*_j]", max_abs(dd), i=i, j=j, tol=min(tol, settings.TOL_EXACT))
        delta = eye if i == j else eye * 0
        report.add("[c_i,c*_j]-delta|interior", max_abs(proj @ (cd - delta) @ proj), i=i, j=j)
        for name, op in (("tr[c_i,c_j]", cc), ("tr[c*_i,c*_j]", dd), ("tr[c_i,c*_j]", cd)):
            report.add(name, abs(complex(op.diagonal().sum())), i=i, j=j)
        if i == j:
            report.observations[f"boundary_defect_mode_{i}"] = float(cd.entry(top, top).real)
            report.observations[f"max_defect_off_interior_mode_{i}"] = max_abs(cd - eye)
    return report


def commutator_defect(ops: BosonLadder, mode: int = 0) -> np.ndarray:
    """Diagonal of [c, c*] - I for one mode; zero except on the cutoff boundary."""
    cd = commutator(ops.c[mode], ops.c_dag[mode])
    return (cd - identity_on(cd.row_basis)).diagonal()


def position_derivative_rep(n_max: int) -> Tuple[SparseComplexOperator, SparseComplexOperator]:
    """(X, D) on the monomial basis {x^0..x^n_max}."""
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise InvalidArgument(f"n_max must be an integer >= 1, got {n_max!r}")
    desc = BasisDescriptor.occupation(1, int(n_max), kind="monomial")
    return SparseComplexOperator.on(_position_1d(n_max), desc), SparseComplexOperator.on(_derivative_1d(n_max), desc)


def _sqrt_factorials(n_max: int) -> np.ndarray:
    if n_max <= settings.FACTORIAL_EXACT_LIMIT:
        return np.sqrt(np.array([float(math.factorial(n)) for n in range(n_max + 1)]))
    return np.exp(0.5 * gammaln(np.arange(n_max + 1, dtype=float) + 1))


def intertwiner(n_max: int) -> SparseComplexOperator:
    """S = diag(sqrt(0!), ..., sqrt(n_max!)), with S^-1 c S = D and S^-1 c* S = X."""
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise InvalidArgument(f"n_max must be an integer >= 1, got {n_max!r}")
    if n_max > settings.INTERTWINER_NMAX_LIMIT:
        raise BudgetExceeded(
            f"intertwiner limited to n_max <= {settings.INTERTWINER_NMAX_LIMIT} in double precision"
        )
    # maps monomial coordinates to occupation coordinates: x^n = sqrt(n!) |n>
    return SparseComplexOperator.on(
        sp.diags(_sqrt_factorials(int(n_max)), format="csr"),
        BasisDescriptor.occupation(1, int(n_max)),
        BasisDescriptor.occupation(1, int(n_max), kind="monomial"),
    )


def intertwine(ops: BosonLadder) -> Dict[str, List[SparseComplexOperator]]:
    """S^-1 c_i S and S^-1 c*_i S with the per-mode intertwiner tensored over modes."""
    cutoff = ops.basis.cutoff
    if cutoff.n_max > settings.INTERTWINER_NMAX_LIMIT:
        raise BudgetExceeded(f"intertwiner limited to n_max <= {settings.INTERTWINER_NMAX_LIMIT}")
    w = _sqrt_factorials(cutoff.n_max)
    s = kron_chain([sp.diags(w)] * cutoff.modes)
    s_inv = kron_chain([sp.diags(1.0 / w)] * cutoff.modes)
    mono = ops.basis.descriptor("monomial")
    conj = lambda op: SparseComplexOperator.on(s_inv @ op.matrix @ s, mono)  # noqa: E731
    return {"c": [conj(x) for x in ops.c], "c_dag": [conj(x) for x in ops.c_dag]}


def multimode_diff_ladder(cutoff: FockCutoff) -> BosonLadder:
    """c_i = (X_i + D_i)/sqrt2, c*_i = (X_i - D_i)/sqrt2 on the multimode monomial basis."""
    _check_cutoff_budget(cutoff, f"differential ladder m={cutoff.modes}, n_max={cutoff.n_max}")
    basis = OccupationBasis(cutoff=cutoff)
    desc = basis.descriptor("monomial")
    x1, d1 = _position_1d(cutoff.n_max), _derivative_1d(cutoff.n_max)
    c, c_dag = [], []
    for i in range(cutoff.modes):
        xi = _embed_mode(x1, i, cutoff.modes, cutoff.n_max)
        di = _embed_mode(d1, i, cutoff.modes, cutoff.n_max)
        c.append(SparseComplexOperator.on((xi + di) / math.sqrt(2), desc))
        c_dag.append(SparseComplexOperator.on((xi - di) / math.sqrt(2), desc))
    return BosonLadder(basis=basis, c=tuple(c), c_dag=tuple(c_dag), representation="monomial")


def compare_representations(cutoff: FockCutoff, tol: float | None = None) -> VerificationReport:
    """
    Per-mode intertwining links the two ladders:
    S^-1 (c + c*) S / sqrt2 = c_diff and S^-1 (c* - c) S / sqrt2 = c*_diff on the interior block.
    """
    tol = settings.TOL_CROSS if tol is None else tol
    occ = boson_ladder(cutoff)
    diff = multimode_diff_ladder(cutoff)
    conj = intertwine(occ)
    inner = interior_indices(occ.basis)
    report = VerificationReport(
        suite="ccr-representations", tol=tol, parameters={"modes": cutoff.modes, "n_max": cutoff.n_max}
    )
    for i in range(cutoff.modes):
        lower = (conj["c"][i] + conj["c_dag"][i]) / math.sqrt(2)
        upper = (conj["c_dag"][i] - conj["c"][i]) / math.sqrt(2)
        report.add("c_diff", max_abs((lower - diff.c[i]).restrict(inner, inner)), i=i)
        report.add("c*_diff", max_abs((upper - diff.c_dag[i]).restrict(inner, inner)), i=i)
    return report


def number_state(cutoff: FockCutoff, occupations: Sequence[int]) -> np.ndarray:
    basis = OccupationBasis(cutoff=cutoff)
    vec = np.zeros(basis.dim, dtype=np.complex128)
    vec[basis.index(occupations)] = 1.0
    return vec


def excite(ops: BosonLadder, state: np.ndarray, mode: int) -> np.ndarray:
    """Normalised c* psi; on a number state this is the recurrence psi_n = c* psi_{n-1} / sqrt(n)."""
    if not 0 <= mode < ops.modes:
        raise InvalidArgument(f"mode {mode} outside 0..{ops.modes - 1}")
    raised = ops.c_dag[mode] @ state
    norm = np.linalg.norm(raised)
    if norm == 0:
        raise InvalidArgument("state is annihilated by c* (top of the cutoff or zero vector)")
    return raised / norm
