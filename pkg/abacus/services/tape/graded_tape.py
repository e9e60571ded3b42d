# abacus/services/tape/graded_tape.py
"""
Graded tape states: a direct sum over grades k of (H2)^{(x)k}, truncated at grade K.

Cells are numbered from the start of the tape, so cell 0 is the leftmost Kronecker factor
and append_blank adds a |0> cell at the rightmost slot. Absent grades are zero.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, Iterable, Literal, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from abacus.core.config import settings
from abacus.core.errors import BudgetExceeded, InvalidArgument
from abacus.schemas.report import VerificationReport
from abacus.services.operators.sparse import max_abs
from abacus.services.symmetric.sym_space import (
    InnerProductKind,
    SymBasisVector,
    SymVector,
    apply_ladder,
    embed_sym,
    inner_product,
    random_unitary,
    symmetrize_tensor,
)

logger = logging.getLogger(__name__)

_BLANK = np.array([1.0, 0.0], dtype=np.complex128)


# ========= Domain types =========

def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class GradedVector(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    K: int
    components: Dict[int, np.ndarray] = {}

    @field_validator("components", mode="before")
    @classmethod
    def _coerce(cls, v):
        return {
            int(k): _frozen(np.array(x, dtype=np.complex128, copy=True).reshape(-1)) for k, x in dict(v).items()
        }

    @model_validator(mode="after")
    def _grades(self):
        if self.K < 0:
            raise ValueError(f"max grade K must be >= 0, got {self.K}")
        for k, vec in self.components.items():
            if not 0 <= k <= self.K:
                raise ValueError(f"grade {k} outside 0..{self.K}")
            if vec.shape != (2**k,):
                raise ValueError(f"grade {k} component needs {2**k} amplitudes, got {vec.shape[0]}")
        return self

    @property
    def grades(self) -> list[int]:
        return sorted(self.components)

    @property
    def top_grade(self) -> int:
        return max(self.components, default=-1)

    def component(self, k: int) -> np.ndarray:
        if k in self.components:
            return self.components[k]
        return np.zeros(2**k, dtype=np.complex128)

    def norm(self) -> float:
        return math.sqrt(graded_inner(self, self).real)

    def grade_part(self, k: int) -> "GradedVector":
        """Single-grade projection; empty if grade k is absent."""
        comps = {k: self.components[k]} if k in self.components else {}
        return GradedVector(K=self.K, components=comps)


class AbacusVector(BaseModel):
    """Symmetric tape states: one e~-basis SymVector per grade."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    K: int
    components: Dict[int, SymVector] = {}

    @model_validator(mode="after")
    def _grades(self):
        for k, vec in self.components.items():
            if vec.k != k:
                raise ValueError(f"component stored at grade {k} has grade {vec.k}")
            if not 0 <= k <= self.K:
                raise ValueError(f"grade {k} outside 0..{self.K}")
            if vec.flavor != "tilde":
                raise ValueError("abacus components are kept in the e~ basis")
        return self

    @property
    def grades(self) -> list[int]:
        return sorted(self.components)

    def norm(self) -> float:
        return math.sqrt(abacus_inner(self, self).real)


# ========= Construction =========

def _check_K(K: int) -> int:
    if not isinstance(K, (int, np.integer)) or K < 0:
        raise InvalidArgument(f"max grade K must be a non-negative integer, got {K!r}")
    if K > settings.TAPE_GRADE_CAP:
        raise BudgetExceeded(f"K={K} exceeds TAPE_GRADE_CAP={settings.TAPE_GRADE_CAP}")
    return int(K)


def zero_tape(K: int) -> GradedVector:
    return GradedVector(K=_check_K(K), components={})


def new_tape(K: int, bits: str = "") -> GradedVector:
    """Basis tape |b_0 b_1 ... b_{k-1}> at grade k = len(bits); the empty string is the unit scalar."""
    K = _check_K(K)
    if any(b not in "01" for b in bits):
        raise InvalidArgument(f"tape cells must be 0 or 1, got {bits!r}")
    k = len(bits)
    if k > K:
        raise BudgetExceeded(f"{k} cells exceed K={K}")
    vec = np.zeros(2**k, dtype=np.complex128)
    vec[int(bits, 2) if bits else 0] = 1.0
    return GradedVector(K=K, components={k: vec})


def random_tape(K: int, grades: Iterable[int], rng: np.random.Generator, normalize: bool = True) -> GradedVector:
    K = _check_K(K)
    comps = {}
    for k in sorted(set(grades)):
        comps[k] = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    tape = GradedVector(K=K, components=comps)
    if normalize and comps:
        n = tape.norm()
        tape = GradedVector(K=K, components={k: v / n for k, v in comps.items()})
    return tape


# ========= Operations =========

def append_blank(psi: GradedVector) -> GradedVector:
    """psi_k -> psi_k (x) |0> at grade k+1, grade by grade."""
    if psi.top_grade >= psi.K:
        raise BudgetExceeded(f"appending a cell to grade {psi.top_grade} would exceed K={psi.K}")
    return GradedVector(K=psi.K, components={k + 1: np.kron(v, _BLANK) for k, v in psi.components.items()})


def graded_inner(psi: GradedVector, phi: GradedVector) -> complex:
    """Sum over grades of <psi_k, phi_k>; grades never pair with each other."""
    total = 0j
    for k in sorted(set(psi.components) & set(phi.components)):
        total += complex(np.vdot(psi.components[k], phi.components[k]))
    return total


def symmetrize_tape(psi: GradedVector) -> AbacusVector:
    """e~ coordinates of the symmetric part of every grade (embed_sym(k)^H per grade)."""
    comps = {}
    for k, v in psi.components.items():
        comps[k] = SymVector(k=k, coeffs=embed_sym(k).H @ v)
    return AbacusVector(K=psi.K, components=comps)


def embed_abacus(a: AbacusVector) -> GradedVector:
    """Symmetric tensors represented by an abacus state."""
    return GradedVector(K=a.K, components={k: embed_sym(k) @ v.coeffs for k, v in a.components.items()})


def _check_gate(gate) -> tuple[np.ndarray, int]:
    g = np.asarray(gate, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise InvalidArgument(f"gate must be a square matrix, got shape {g.shape}")
    r = int(round(math.log2(g.shape[0]))) if g.shape[0] > 0 else -1
    if r < 1 or 2**r != g.shape[0]:
        raise InvalidArgument(f"gate dimension {g.shape[0]} is not a power of two >= 2")
    dev = max_abs(g.conj().T @ g - np.eye(g.shape[0]))
    if dev > settings.UNITARY_TOL:
        raise InvalidArgument(f"gate is not unitary (|G*G - I| = {dev:.3e})")
    return g, r


def apply_gate(psi: GradedVector, gate, position: int, strict: bool | None = None) -> GradedVector:
    """
    Apply G to cells position..position+r-1 of every grade. Grades shorter than the window
    are left untouched unless strict (default settings.TAPE_STRICT_GATES).
    """
    g, r = _check_gate(gate)
    if not isinstance(position, (int, np.integer)) or position < 0:
        raise InvalidArgument(f"position must be a non-negative integer, got {position!r}")
    strict = settings.TAPE_STRICT_GATES if strict is None else strict
    comps: Dict[int, np.ndarray] = {}
    for k, v in psi.components.items():
        if position + r > k:
            if strict:
                raise InvalidArgument(f"gate on cells {position}..{position + r - 1} does not fit grade {k}")
            logger.debug("gate window %d+%d skips grade %d", position, r, k)
            comps[k] = v
            continue
        block = v.reshape(2**position, 2**r, 2 ** (k - position - r))
        comps[k] = np.einsum("ab,xbz->xaz", g, block).reshape(-1)
    return GradedVector(K=psi.K, components=comps)


# ========= Abacus operations =========

def abacus_ladder(a: AbacusVector, mode: int, dagger: bool = False) -> AbacusVector:
    """Add (dagger) or remove one symmetric "mode" qubit on every grade; grades shift by one."""
    out: Dict[int, np.ndarray] = {}
    for k, v in a.components.items():
        if dagger and k + 1 > a.K:
            if np.any(v.coeffs):
                raise BudgetExceeded(f"raising grade {k} would exceed K={a.K}")
            continue
        moved = apply_ladder(v, mode, dagger)
        if moved is None:
            continue
        out[moved.k] = out[moved.k] + moved.coeffs if moved.k in out else moved.coeffs
    return AbacusVector(K=a.K, components={k: SymVector(k=k, coeffs=c) for k, c in out.items()})


def abacus_inner(a: AbacusVector, b: AbacusVector, kind: InnerProductKind = "standard") -> complex:
    return inner_product(a.components, b.components, kind)


def abacus_basis(K: int, occupations: Mapping[int, int] | Sequence[int]) -> AbacusVector:
    """|n0, n1> as an abacus state at grade n0 + n1."""
    n0, n1 = (occupations[0], occupations[1])
    k = int(n0) + int(n1)
    if k > _check_K(K):
        raise BudgetExceeded(f"grade {k} exceeds K={K}")
    return AbacusVector(K=K, components={k: SymBasisVector(k=k, i=int(n0)).vector()})


# ========= Verification =========

def verify_tape(
    seed: int | None = None, K: int = 12, samples: int = 100, tol: float = 1e-14
) -> VerificationReport:
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    report = VerificationReport(suite="tape", tol=tol, parameters={"seed": seed, "K": K, "samples": samples})
    sigma_x = np.array([[0, 1], [1, 0]], dtype=np.complex128)

    def random_grades(parity: int | None = None) -> list[int]:
        pool = [k for k in range(K) if parity is None or k % 2 == parity]
        count = int(rng.integers(1, min(4, len(pool)) + 1))
        return sorted(int(x) for x in rng.choice(pool, size=count, replace=False))

    worst_iso = worst_ortho = worst_single = worst_idem = worst_gate = 0.0
    norm_growth = 0.0
    for _ in range(samples):
        psi = random_tape(K, random_grades(), rng)
        phi = random_tape(K, random_grades(), rng)
        worst_iso = max(worst_iso, abs(graded_inner(append_blank(psi), append_blank(phi)) - graded_inner(psi, phi)))

        for k in psi.grades:
            part = psi.grade_part(k)
            worst_single = max(worst_single, abs(graded_inner(part, append_blank(part))))

        # one grade parity: appending flips every parity, so the overlap vanishes
        even = random_tape(K, random_grades(parity=0), rng)
        worst_ortho = max(worst_ortho, abs(graded_inner(even, append_blank(even))))

        sym = symmetrize_tape(psi)
        again = symmetrize_tape(embed_abacus(sym))
        for k in sym.grades:
            worst_idem = max(worst_idem, max_abs(again.components[k].coeffs - sym.components[k].coeffs))
        norm_growth = max(norm_growth, sym.norm() - psi.norm())

        u = random_unitary(2, rng)
        pos = int(rng.integers(0, 2))
        gated = apply_gate(psi, u, pos, strict=False)
        for k in psi.grades:
            worst_gate = max(worst_gate, abs(np.linalg.norm(gated.component(k)) - np.linalg.norm(psi.component(k))))

    report.add("append-isometry", worst_iso)
    report.add("<psi_k,append psi_k>", worst_single, tol=0.0)
    report.add("<psi,append psi>|one-parity", worst_ortho, tol=0.0)
    report.add("symmetrize-idempotent", worst_idem, tol=settings.TOL_ALGEBRA)
    report.add("symmetrize-norm-nonincreasing", max(norm_growth, 0.0), tol=settings.TOL_ALGEBRA)
    report.add("gate-norm-per-grade", worst_gate, tol=settings.TOL_ALGEBRA)
    report.add("sigma_x-flip", max_abs(apply_gate(new_tape(K, "0"), sigma_x, 0).component(1) - [0, 1]), tol=0.0)

    # symmetrize(append(e~_{i,j})) at grade k+1 is sqrt((i+1)/(k+1)) e~_{i+1,j}
    for k in range(1, 5):
        for i in range(k + 1):
            basis = SymBasisVector(k=k, i=i)
            psi = embed_abacus(AbacusVector(K=k + 1, components={k: basis.vector()}))
            appended = append_blank(psi)
            coeffs = symmetrize_tape(appended).components[k + 1].coeffs
            expected = np.zeros(k + 2, dtype=np.complex128)
            expected[basis.j] = math.sqrt((i + 1) / (k + 1))
            target = embed_sym(k + 1).column(basis.j)
            brute = np.vdot(target, symmetrize_tensor(appended.components[k + 1], k + 1))
            dev = max(max_abs(coeffs - expected), abs(brute - expected[basis.j]))
            report.add("append-symmetrize-factor", dev, i=k, j=i, tol=settings.TOL_ALGEBRA)
    return report
