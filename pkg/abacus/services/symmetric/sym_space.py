# abacus/services/symmetric/sym_space.py
"""
Symmetric powers Sy_k(H2) of the qubit space.

Coefficient position p of a grade-k vector is the number of "1" factors: position p holds
the e_{k-p,p} (or e~_{k-p,p}) coordinate, so positions run e_{k,0}, e_{k-1,1}, ..., e_{0,k}.
The same order is used for homogeneous polynomials: position p is the coefficient of
xi^(k-p) eta^p, i.e. a_k..a_0.

e~_{i,j} = e_{i,j} / sqrt(i! j!) is orthonormal under the standard product.
"""
from __future__ import annotations

import itertools
import logging
import math
from typing import Dict, Literal, Mapping, Tuple, Union

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.special import comb, gammaln
from scipy.stats import unitary_group

from abacus.core.config import settings
from abacus.core.errors import BudgetExceeded, InvalidArgument, ShapeMismatch
from abacus.schemas.report import VerificationReport
from abacus.services.cache import cached_operator, key_tuple
from abacus.services.operators.sparse import (
    BasisDescriptor,
    SparseComplexOperator,
    ensure_nnz_budget,
    identity_on,
    max_abs,
)

logger = logging.getLogger(__name__)

Flavor = Literal["tilde", "e"]
InnerProductKind = Literal["standard", "exp"]

# (1/k!) sum over k! axis permutations; only meant for cross-checks
BRUTE_FORCE_MAX_GRADE = 8


# ========= Domain types =========

def _as_coeffs(v) -> np.ndarray:
    arr = np.array(v, dtype=np.complex128, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


class SymVector(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int
    coeffs: np.ndarray
    flavor: Flavor = "tilde"

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce(cls, v):
        return _as_coeffs(v)

    @model_validator(mode="after")
    def _grade_consistent(self):
        if self.k < 0:
            raise ValueError(f"grade must be >= 0, got {self.k}")
        if self.coeffs.shape != (self.k + 1,):
            raise ValueError(f"grade {self.k} needs {self.k + 1} coefficients, got {self.coeffs.shape[0]}")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coefficients must be finite")
        return self

    @property
    def descriptor(self) -> BasisDescriptor:
        return BasisDescriptor.sym(self.k, self.flavor)

    def norm(self) -> float:
        return math.sqrt(inner_product(self, self).real)


class SymBasisVector(BaseModel):
    """e_{i,j} or e~_{i,j}: i factors "0", j = k - i factors "1"."""

    model_config = ConfigDict(frozen=True)

    k: int
    i: int
    flavor: Flavor = "tilde"

    @model_validator(mode="after")
    def _range(self):
        if not 0 <= self.i <= self.k:
            raise ValueError(f"need 0 <= i <= k, got i={self.i}, k={self.k}")
        return self

    @property
    def j(self) -> int:
        return self.k - self.i

    @property
    def position(self) -> int:
        return self.j

    def vector(self) -> SymVector:
        coeffs = np.zeros(self.k + 1, dtype=np.complex128)
        coeffs[self.position] = 1.0
        return SymVector(k=self.k, coeffs=coeffs, flavor=self.flavor)


class HomogeneousPoly(BaseModel):
    """p(xi, eta) = a_k xi^k + a_{k-1} xi^{k-1} eta + ... + a_0 eta^k, stored as [a_k, ..., a_0]."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int
    coeffs: np.ndarray

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce(cls, v):
        return _as_coeffs(v)

    @model_validator(mode="after")
    def _length(self):
        if self.k < 0:
            raise ValueError(f"degree must be >= 0, got {self.k}")
        if self.coeffs.shape != (self.k + 1,):
            raise ValueError(f"degree {self.k} needs {self.k + 1} coefficients, got {self.coeffs.shape[0]}")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coefficients must be finite")
        return self

    @classmethod
    def from_coeffs(cls, coeffs) -> "HomogeneousPoly":
        arr = _as_coeffs(coeffs)
        if arr.size == 0:
            raise InvalidArgument("a polynomial needs at least one coefficient")
        return cls(k=arr.size - 1, coeffs=arr)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)


class SymLadder(BaseModel):
    """Lowering maps Sy_k -> Sy_{k-1} and raising maps Sy_k -> Sy_{k+1}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int
    flavor: Flavor
    c0: SparseComplexOperator
    c1: SparseComplexOperator
    c0_dag: SparseComplexOperator
    c1_dag: SparseComplexOperator

    @property
    def lowering(self) -> Tuple[SparseComplexOperator, SparseComplexOperator]:
        return self.c0, self.c1

    @property
    def raising(self) -> Tuple[SparseComplexOperator, SparseComplexOperator]:
        return self.c0_dag, self.c1_dag


# ========= Guards =========

def _check_grade(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 0:
        raise InvalidArgument(f"grade must be a non-negative integer, got {k!r}")
    return int(k)


def _check_tensor_grade(k: int, what: str) -> int:
    k = _check_grade(k)
    if k > settings.SYM_GRADE_CAP:
        raise BudgetExceeded(f"{what} at grade {k} exceeds SYM_GRADE_CAP={settings.SYM_GRADE_CAP}")
    return k


def _check_ladder_grade(k: int) -> int:
    k = _check_grade(k)
    if k > settings.SYM_LADDER_GRADE_CAP:
        raise BudgetExceeded(f"grade {k} exceeds SYM_LADDER_GRADE_CAP={settings.SYM_LADDER_GRADE_CAP}")
    return k


# ========= Basic operations =========

def sym_dim(k: int) -> int:
    return _check_grade(k) + 1


def _popcounts(k: int) -> np.ndarray:
    idx = np.arange(2**k, dtype=np.int64)
    counts = np.zeros_like(idx)
    for bit in range(k):
        counts += (idx >> bit) & 1
    return counts


@cached_operator(namespace="embed_sym", key_builder=lambda k: key_tuple("embed", k))
def _embedding_matrix(k: int) -> sp.csr_matrix:
    # column j: uniform superposition of the C(k, j) bitstrings with j ones
    ones = _popcounts(k)
    data = 1.0 / np.sqrt(comb(k, ones))
    rows = np.arange(2**k)
    logger.debug("embed_sym k=%d: %d x %d", k, 2**k, k + 1)
    return sp.csr_matrix((data.astype(np.complex128), (rows, ones)), shape=(2**k, k + 1))


def embed_sym(k: int) -> SparseComplexOperator:
    """Isometry Sy_k (e~ basis) -> (H2)^{(x)k}; e~_{i,j} goes to the unit-norm symmetrized basis tensor."""
    k = _check_tensor_grade(k, "embed_sym")
    ensure_nnz_budget(2**k, f"Sy_{k} embedding")
    return SparseComplexOperator.on(_embedding_matrix(k), BasisDescriptor.tensor(k), BasisDescriptor.sym(k))


def symmetrizer(k: int) -> SparseComplexOperator:
    """
    Orthogonal projector (1/k!) sum_sigma sigma onto the symmetric subspace, as E E^H.

    The built matrix has C(2k, k) nonzeros, so at the default NNZ_BUDGET it stops at k = 11;
    apply_symmetrizer reaches the full SYM_GRADE_CAP.
    """
    k = _check_tensor_grade(k, "symmetrizer")
    # block j is a dense C(k,j) x C(k,j) square
    ensure_nnz_budget(int(comb(2 * k, k, exact=True)), f"Sy_{k} symmetrizer")
    e = embed_sym(k)
    return e @ e.H


def apply_symmetrizer(tensor, k: int) -> np.ndarray:
    """P t computed as E (E^H t), never forming P."""
    e = embed_sym(k)
    arr = np.asarray(tensor, dtype=np.complex128).reshape(-1)
    if arr.size != 2**k:
        raise ShapeMismatch(f"grade {k} tensor needs {2**k} entries, got {arr.size}")
    return e @ (e.H @ arr)


def symmetrize_tensor(tensor, k: int) -> np.ndarray:
    """Brute-force (1/k!) sum over all axis permutations of a 2^k tensor, flattened."""
    k = _check_grade(k)
    if k > BRUTE_FORCE_MAX_GRADE:
        raise BudgetExceeded(f"brute-force symmetrization limited to grade {BRUTE_FORCE_MAX_GRADE}")
    arr = np.asarray(tensor, dtype=np.complex128)
    if arr.size != 2**k:
        raise ShapeMismatch(f"grade {k} tensor needs {2**k} entries, got {arr.size}")
    if k == 0:
        return arr.reshape(1).copy()
    cube = arr.reshape((2,) * k)
    out = np.zeros_like(cube)
    for perm in itertools.permutations(range(k)):
        out += np.transpose(cube, perm)
    return (out / math.factorial(k)).reshape(-1)


# ========= Flavors and inner products =========

def _log_flavor_weights(k: int) -> np.ndarray:
    # log sqrt(i! j!) for positions p = j = 0..k
    j = np.arange(k + 1, dtype=float)
    return 0.5 * (gammaln(k - j + 1) + gammaln(j + 1))


def flavor_weights(k: int) -> np.ndarray:
    """sqrt(i! j!) per position: e-coordinates times these give e~-coordinates."""
    k = _check_grade(k)
    if k <= settings.FACTORIAL_EXACT_LIMIT:
        return np.sqrt(np.array([float(math.factorial(k - j) * math.factorial(j)) for j in range(k + 1)]))
    return np.exp(_log_flavor_weights(k))


def basis_convert(v: SymVector, to: Flavor) -> SymVector:
    """Rescale coordinates between the e and e~ bases. The source flavor is the one carried by v."""
    if to not in ("tilde", "e"):
        raise InvalidArgument(f"unknown flavor {to!r}")
    if v.flavor == to:
        return v
    w = flavor_weights(v.k)
    coeffs = v.coeffs * w if to == "tilde" else v.coeffs / w
    return SymVector(k=v.k, coeffs=coeffs, flavor=to)


def _grade_weight(k: int, kind: InnerProductKind) -> float:
    if kind == "standard":
        return 1.0
    if kind == "exp":
        return math.exp(-gammaln(k + 1))
    raise InvalidArgument(f"unknown inner product kind {kind!r}")


def gram_matrix(k: int, flavor: Flavor = "tilde", kind: InnerProductKind = "standard") -> np.ndarray:
    k = _check_ladder_grade(k)
    diag = np.ones(k + 1) if flavor == "tilde" else flavor_weights(k) ** 2
    return np.diag(diag * _grade_weight(k, kind)).astype(np.complex128)


SymLike = Union[SymVector, Mapping[int, SymVector]]


def inner_product(psi: SymLike, phi: SymLike, kind: InnerProductKind = "standard") -> complex:
    """
    Conjugate-linear in psi. Accepts single-grade vectors or graded sums {k: SymVector};
    missing grades are zero and distinct grades never pair.
    """
    if isinstance(psi, SymVector) and isinstance(phi, SymVector):
        if psi.k != phi.k:
            raise ShapeMismatch(f"grade {psi.k} and grade {phi.k} vectors cannot be paired directly")
        a = basis_convert(psi, "tilde").coeffs
        b = basis_convert(phi, "tilde").coeffs
        return complex(np.vdot(a, b) * _grade_weight(psi.k, kind))
    left = {psi.k: psi} if isinstance(psi, SymVector) else dict(psi)
    right = {phi.k: phi} if isinstance(phi, SymVector) else dict(phi)
    total = 0j
    for k in sorted(set(left) & set(right)):
        total += inner_product(left[k], right[k], kind)
    return total


# ========= Polynomials =========

def sym_from_poly(p: HomogeneousPoly) -> SymVector:
    """xi^i eta^j <-> e_{i,j}: the coefficient list is shared position by position."""
    return SymVector(k=p.k, coeffs=p.coeffs, flavor="e")


def poly_from_sym(v: SymVector) -> HomogeneousPoly:
    return HomogeneousPoly(k=v.k, coeffs=basis_convert(v, "e").coeffs)


def _linear_power(form: np.ndarray, power: int) -> np.ndarray:
    out = np.ones(1, dtype=np.complex128)
    for _ in range(power):
        out = np.convolve(out, form)
    return out


# ========= SU(2) action =========

def _check_unitary(u) -> np.ndarray:
    arr = np.asarray(u, dtype=np.complex128)
    if arr.shape != (2, 2):
        raise InvalidArgument(f"expected a 2x2 matrix, got shape {arr.shape}")
    dev = float(np.max(np.abs(arr.conj().T @ arr - np.eye(2))))
    if dev > settings.UNITARY_TOL:
        raise InvalidArgument(f"matrix is not unitary (|U*U - I| = {dev:.3e})")
    return arr


def apply_tensor_power(u: np.ndarray, block: np.ndarray, k: int) -> np.ndarray:
    """U^{(x)k} applied to the columns of a (2^k, n) array without forming the 2^k x 2^k matrix."""
    n = block.shape[1]
    cube = np.asarray(block, dtype=np.complex128).reshape((2,) * k + (n,))
    for axis in range(k):
        cube = np.moveaxis(np.tensordot(u, cube, axes=([1], [axis])), 0, axis)
    return cube.reshape(2**k, n)


def _su2_by_embedding(u: np.ndarray, k: int) -> np.ndarray:
    e = embed_sym(k)
    return e.H.matrix @ apply_tensor_power(u, e.toarray(), k)


def _su2_by_polynomial(u: np.ndarray, k: int) -> np.ndarray:
    # xi -> u00 xi + u10 eta, eta -> u01 xi + u11 eta, then e -> e~ coordinates
    xi_image = np.array([u[0, 0], u[1, 0]])
    eta_image = np.array([u[0, 1], u[1, 1]])
    cols = [np.convolve(_linear_power(xi_image, k - p), _linear_power(eta_image, p)) for p in range(k + 1)]
    m_e = np.column_stack(cols)
    lw = _log_flavor_weights(k)
    return m_e * np.exp(lw[:, None] - lw[None, :])


def su2_induced(u, k: int, method: Literal["auto", "embedding", "polynomial"] = "auto") -> SparseComplexOperator:
    """(k+1)x(k+1) matrix of U^{(x)k} restricted to Sy_k, in the e~ basis."""
    arr = _check_unitary(u)
    k = _check_ladder_grade(k)
    if method == "auto":
        method = "embedding" if k <= settings.SYM_GRADE_CAP else "polynomial"
    if method == "embedding":
        mat = _su2_by_embedding(arr, k)
    elif method == "polynomial":
        mat = _su2_by_polynomial(arr, k)
    else:
        raise InvalidArgument(f"unknown su2_induced method {method!r}")
    desc = BasisDescriptor.sym(k)
    return SparseComplexOperator.on(mat, desc)


# ========= Ladders between grades =========

def _lowering_blocks(k: int) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    # c0 e~_{i,j} = sqrt(i) e~_{i-1,j}, c1 e~_{i,j} = sqrt(j) e~_{i,j-1}
    j = np.arange(k + 1)
    c0 = sp.csr_matrix((np.sqrt(k - j[:k]).astype(np.complex128), (j[:k], j[:k])), shape=(k, k + 1))
    c1 = sp.csr_matrix((np.sqrt(j[1:]).astype(np.complex128), (j[1:] - 1, j[1:])), shape=(k, k + 1))
    return c0, c1


def _raising_blocks(k: int) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    # c0* e~_{i,j} = sqrt(i+1) e~_{i+1,j}, c1* e~_{i,j} = sqrt(j+1) e~_{i,j+1}
    j = np.arange(k + 1)
    c0d = sp.csr_matrix((np.sqrt(k - j + 1).astype(np.complex128), (j, j)), shape=(k + 2, k + 1))
    c1d = sp.csr_matrix((np.sqrt(j + 1).astype(np.complex128), (j + 1, j)), shape=(k + 2, k + 1))
    return c0d, c1d


def _to_e_flavor(mat: sp.csr_matrix, k_from: int, k_to: int) -> sp.csr_matrix:
    # e-coordinates: W_to^-1 M W_from
    if k_to < 0:
        return mat
    w_from = np.exp(_log_flavor_weights(k_from))
    w_to = np.exp(_log_flavor_weights(k_to))
    return sp.diags(1.0 / w_to) @ mat @ sp.diags(w_from)


def sym_ladder(k: int, flavor: Flavor = "tilde") -> SymLadder:
    """
    (c0, c1, c0*, c1*) at grade k. Lowering from k = 0 is the zero map onto the empty grade.
    With flavor="e" the maps act as d/dxi_i and multiplication by xi_i on monomials.
    """
    k = _check_ladder_grade(k)
    c0, c1 = _lowering_blocks(k)
    c0d, c1d = _raising_blocks(k)
    if flavor == "e":
        c0, c1 = (_to_e_flavor(x, k, k - 1) for x in (c0, c1))
        c0d, c1d = (_to_e_flavor(x, k, k + 1) for x in (c0d, c1d))
    elif flavor != "tilde":
        raise InvalidArgument(f"unknown flavor {flavor!r}")
    here, down, up = (BasisDescriptor.sym(g, flavor) for g in (k, k - 1, k + 1))
    return SymLadder(
        k=k,
        flavor=flavor,
        c0=SparseComplexOperator.on(c0, down, here),
        c1=SparseComplexOperator.on(c1, down, here),
        c0_dag=SparseComplexOperator.on(c0d, up, here),
        c1_dag=SparseComplexOperator.on(c1d, up, here),
    )


def polynomial_ladder(k: int) -> Dict[str, np.ndarray]:
    """d/dxi, d/deta, xi*, eta* on degree-k monomials, written down directly."""
    k = _check_ladder_grade(k)
    j = np.arange(k + 1)
    d0 = np.zeros((k, k + 1))
    d1 = np.zeros((k, k + 1))
    x0 = np.zeros((k + 2, k + 1))
    x1 = np.zeros((k + 2, k + 1))
    d0[j[:k], j[:k]] = k - j[:k]      # d/dxi xi^i eta^j = i xi^(i-1) eta^j
    d1[j[1:] - 1, j[1:]] = j[1:]
    x0[j, j] = 1.0
    x1[j + 1, j] = 1.0
    return {"c0": d0, "c1": d1, "c0_dag": x0, "c1_dag": x1}


def apply_ladder(v: SymVector, mode: int, dagger: bool) -> SymVector | None:
    """One ladder step on a single-grade vector; None when lowering leaves the empty grade."""
    if mode not in (0, 1):
        raise InvalidArgument(f"mode must be 0 or 1, got {mode}")
    ladder = sym_ladder(v.k, v.flavor)
    op = (ladder.raising if dagger else ladder.lowering)[mode]
    if op.shape[0] == 0:
        return None
    return SymVector(k=op.row_basis.grade, coeffs=op @ v.coeffs, flavor=v.flavor)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random n x n unitary."""
    return unitary_group.rvs(n, random_state=rng)


def random_sym_vector(k: int, rng: np.random.Generator, normalize: bool = True) -> SymVector:
    k = _check_grade(k)
    coeffs = rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1)
    if normalize:
        coeffs /= np.linalg.norm(coeffs)
    return SymVector(k=k, coeffs=coeffs)


# ========= Verification =========

def verify_sym_space(
    k_max: int = 10,
    seed: int | None = None,
    tol: float | None = None,
    su2_grade_max: int = 8,
    su2_pairs: int = 50,
) -> VerificationReport:
    seed = settings.DEFAULT_SEED if seed is None else seed
    tol = settings.TOL_ALGEBRA if tol is None else tol
    rng = np.random.default_rng(seed)
    report = VerificationReport(
        suite="sym", tol=tol, parameters={"k_max": k_max, "seed": seed, "su2_pairs": su2_pairs}
    )
    for k in range(1, k_max + 1):
        emb = embed_sym(k)
        report.add("E^H E-I", max_abs(emb.H @ emb - identity_on(emb.col_basis)), i=k)
        if comb(2 * k, k, exact=True) > settings.NNZ_BUDGET:
            t = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
            once = apply_symmetrizer(t, k)
            report.add("P^2-P", max_abs(apply_symmetrizer(once, k) - once), i=k)
            continue
        proj = symmetrizer(k)
        report.add("P^2-P", max_abs(proj @ proj - proj), i=k)
        report.add("P-P^H", max_abs(proj - proj.H), i=k)
        report.add("rank(P)-(k+1)", abs(complex(proj.diagonal().sum()) - (k + 1)), i=k)
        if k <= 5:
            t = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
            report.add("P-brute-force", max_abs(proj @ t - symmetrize_tensor(t, k)), i=k)

    for k in range(1, su2_grade_max + 1):
        worst_hom = worst_unit = worst_inter = worst_route = 0.0
        eye = np.eye(k + 1)
        for _ in range(su2_pairs):
            u1, u2 = random_unitary(2, rng), random_unitary(2, rng)
            d1, d2 = su2_induced(u1, k).toarray(), su2_induced(u2, k).toarray()
            d12 = su2_induced(u1 @ u2, k).toarray()
            worst_hom = max(worst_hom, max_abs(d12 - d1 @ d2))
            worst_unit = max(worst_unit, max_abs(d1.conj().T @ d1 - eye))
            emb = embed_sym(k)
            worst_inter = max(worst_inter, max_abs(emb @ d1 - apply_tensor_power(u1, emb.toarray(), k)))
            worst_route = max(worst_route, max_abs(d1 - su2_induced(u1, k, method="polynomial").toarray()))
        report.add("D(U1U2)-D(U1)D(U2)", worst_hom, i=k, tol=settings.TOL_CROSS)
        report.add("D^H D-I", worst_unit, i=k, tol=settings.TOL_CROSS)
        report.add("E D-U^k E", worst_inter, i=k, tol=settings.TOL_CROSS)
        report.add("embedding-vs-polynomial", worst_route, i=k, tol=settings.TOL_CROSS)

    for k in range(1, k_max + 1):
        here = sym_ladder(k)
        below = sym_ladder(k - 1)
        number = below.c0_dag @ here.c0 + below.c1_dag @ here.c1
        report.add("c0*c0+c1*c1-k", max_abs(number - identity_on(here.c0.col_basis) * k), i=k)
        report.add("c*(k-1)-c(k)^H", max(max_abs(below.c0_dag - here.c0.H), max_abs(below.c1_dag - here.c1.H)), i=k)
        in_e = sym_ladder(k, flavor="e")
        direct = polynomial_ladder(k)
        dev = max(max_abs(getattr(in_e, name).toarray() - direct[name]) for name in direct)
        report.add("e-flavor-vs-derivatives", dev, i=k)
    return report
