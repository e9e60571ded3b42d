# abacus/services/symmetric/stellar.py
"""
Stellar (Majorana) picture of Sy_k(H2): a homogeneous polynomial factors as
scale * prod_i (alpha_i xi - beta_i eta), and each factor is a point on the Riemann sphere
with zeta = beta / alpha (zeta = infinity when alpha = 0).

Roots are taken from the dehomogenized polynomial p(zeta) = sum_i a_i zeta^i.
"""
from __future__ import annotations

import logging
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from abacus.core.config import settings
from abacus.core.errors import InvalidArgument
from abacus.schemas.report import VerificationReport
from abacus.services.operators.fock_ccr import FockCutoff, boson_ladder, position_derivative_rep
from abacus.services.operators.sparse import SparseComplexOperator, commutator, kron_chain, max_abs
from abacus.services.symmetric.sym_space import HomogeneousPoly

logger = logging.getLogger(__name__)

# minimum chordal separation used for randomized round trips
ROOT_SEPARATION = 1e-3


# ========= Domain types =========

class StellarPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: complex
    beta: complex

    @field_validator("alpha", "beta", mode="before")
    @classmethod
    def _complex(cls, v):
        return complex(v)

    @model_validator(mode="after")
    def _not_origin(self):
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("(alpha, beta) = (0, 0) is not a point of the sphere")
        return self

    @property
    def is_pole(self) -> bool:
        return self.alpha == 0

    @property
    def zeta(self) -> complex:
        if self.is_pole:
            return complex(math.inf, 0.0)
        return self.beta / self.alpha

    def canonical(self) -> "StellarPoint":
        """Unit norm with the first nonzero component real positive."""
        norm = math.hypot(abs(self.alpha), abs(self.beta))
        lead = self.alpha if self.alpha != 0 else self.beta
        phase = lead / abs(lead)
        return StellarPoint(alpha=self.alpha / (norm * phase), beta=self.beta / (norm * phase))

    def factor(self) -> np.ndarray:
        # alpha xi - beta eta, in [xi, eta] coefficient order
        return np.array([self.alpha, -self.beta], dtype=np.complex128)


class StarConfiguration(BaseModel):
    model_config = ConfigDict(frozen=True)

    stars: Tuple[StellarPoint, ...]
    scale: complex = 1.0 + 0j

    @field_validator("scale", mode="before")
    @classmethod
    def _complex(cls, v):
        return complex(v)

    @model_validator(mode="after")
    def _nonzero_scale(self):
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        return self

    @property
    def k(self) -> int:
        return len(self.stars)

    def zetas(self) -> List[complex]:
        return [s.zeta for s in self.stars]


def _sort_key(point: StellarPoint) -> Tuple[int, float, float]:
    if point.is_pole:
        return (1, 0.0, 0.0)
    z = point.zeta
    return (0, z.real, z.imag)


def canonical_order(points: Iterable[StellarPoint]) -> Tuple[StellarPoint, ...]:
    """Sorted by (Re zeta, Im zeta), poles last."""
    return tuple(sorted((p.canonical() for p in points), key=_sort_key))


POLE = StellarPoint(alpha=0, beta=1)


def star_from_root(zeta: complex | None) -> StellarPoint:
    """Canonical point for a finite root, or the pole for None / infinity."""
    if zeta is None or not np.isfinite(zeta):
        return POLE
    z = complex(zeta)
    norm = math.sqrt(1.0 + abs(z) ** 2)
    return StellarPoint(alpha=1.0 / norm, beta=z / norm)


# ========= Conversions =========

def _polish(roots: np.ndarray, low_to_high: np.ndarray, steps: int = 2) -> np.ndarray:
    """Newton steps on each root, kept only where the residual shrinks."""
    deriv = P.polyder(low_to_high)
    out = roots.copy()
    for _ in range(steps):
        value = P.polyval(out, low_to_high)
        slope = P.polyval(out, deriv)
        ok = slope != 0
        trial = out.copy()
        trial[ok] = out[ok] - value[ok] / slope[ok]
        better = np.abs(P.polyval(trial, low_to_high)) < np.abs(value)
        out = np.where(better, trial, out)
    return out


def _finite_roots(low_to_high: np.ndarray) -> np.ndarray:
    if low_to_high.size < 2:
        return np.zeros(0, dtype=np.complex128)
    # eigenvalues of the companion matrix; LAPACK balances it first
    roots = scipy.linalg.eigvals(P.polycompanion(low_to_high))
    return _polish(roots, low_to_high)


def poly_from_stars(cfg: StarConfiguration) -> HomogeneousPoly:
    """scale * prod (alpha_i xi - beta_i eta), expanded by convolution."""
    coeffs = np.ones(1, dtype=np.complex128)
    for star in cfg.stars:
        coeffs = np.convolve(coeffs, star.factor())
    return HomogeneousPoly(k=cfg.k, coeffs=coeffs * cfg.scale)


def stars_from_poly(p: HomogeneousPoly) -> StarConfiguration:
    if p.is_zero():
        raise InvalidArgument("the zero polynomial has no stellar representation")
    c = p.coeffs
    cutoff = settings.STAR_DEFLATION_TOL * float(np.max(np.abs(c)))
    n_poles = 0
    while n_poles < p.k and abs(c[n_poles]) <= cutoff:
        n_poles += 1
    # c[n_poles:] is a_{k-n_poles} .. a_0; polycompanion wants a_0 first
    roots = _finite_roots(c[n_poles:][::-1])
    points = [star_from_root(z) for z in roots] + [POLE] * n_poles
    stars = canonical_order(points)
    unit = poly_from_stars(StarConfiguration(stars=stars, scale=1.0)).coeffs
    # least-squares scale so that scale * unit reproduces p
    scale = complex(np.vdot(unit, c) / np.vdot(unit, unit))
    logger.debug("stars_from_poly k=%d: %d finite, %d at the pole", p.k, len(roots), n_poles)
    return StarConfiguration(stars=stars, scale=scale)


def relative_deviation(p: HomogeneousPoly, q: HomogeneousPoly) -> float:
    if p.k != q.k:
        raise InvalidArgument(f"degrees differ: {p.k} vs {q.k}")
    return float(np.linalg.norm(p.coeffs - q.coeffs) / np.linalg.norm(p.coeffs))


def proportionality_deviation(p: HomogeneousPoly, q: HomogeneousPoly) -> float:
    """Relative distance of q from the line through p (0 when q is a multiple of p)."""
    if p.k != q.k:
        raise InvalidArgument(f"degrees differ: {p.k} vs {q.k}")
    lam = np.vdot(p.coeffs, q.coeffs) / np.vdot(p.coeffs, p.coeffs)
    return float(np.linalg.norm(q.coeffs - lam * p.coeffs) / np.linalg.norm(q.coeffs))


# ========= Derivatives =========

def directional_derivative(p: HomogeneousPoly, v: Sequence[complex]) -> HomogeneousPoly:
    """(v1 d/dxi + v2 d/deta) p, coefficient by coefficient."""
    if len(v) != 2:
        raise InvalidArgument(f"direction must have two components, got {len(v)}")
    v1, v2 = complex(v[0]), complex(v[1])
    if v1 == 0 and v2 == 0:
        raise InvalidArgument("direction (0, 0) is not allowed")
    if p.k < 1:
        raise InvalidArgument("cannot differentiate a degree-0 polynomial")
    k = p.k
    pos = np.arange(k + 1)
    d_xi = (k - pos[:k]) * p.coeffs[:k]   # xi^(k-p) eta^p -> (k-p) xi^(k-p-1) eta^p
    d_eta = pos[1:] * p.coeffs[1:]        # xi^(k-p) eta^p -> p xi^(k-p) eta^(p-1)
    return HomogeneousPoly(k=k - 1, coeffs=v1 * d_xi + v2 * d_eta)


# ========= Distances =========

def chordal_distance(a: StellarPoint, b: StellarPoint) -> float:
    """|alpha1 beta2 - alpha2 beta1| for unit representatives, in [0, 1]."""
    a, b = a.canonical(), b.canonical()
    return float(abs(a.alpha * b.beta - b.alpha * a.beta))


def star_set_distance(first: Sequence[StellarPoint], second: Sequence[StellarPoint]) -> float:
    """Hausdorff distance under the chordal metric."""
    if not first and not second:
        return 0.0
    if not first or not second:
        return 1.0
    d = np.array([[chordal_distance(a, b) for b in second] for a in first])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


# ========= Even-subspace operators =========

class TildeOps(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_max: int
    D: SparseComplexOperator         # c0 c1
    X: SparseComplexOperator         # |n0,n1> -> |n0+1,n1+1>
    X_ladder: SparseComplexOperator  # c0* c1*, the adjoint of D


def tilde_ops(n_max: int) -> TildeOps:
    cutoff = FockCutoff(modes=2, n_max=n_max)
    ops = boson_ladder(cutoff)
    shift, _ = position_derivative_rep(n_max)
    desc = ops.basis.descriptor()
    x = SparseComplexOperator.on(kron_chain([shift.matrix, shift.matrix]), desc)
    return TildeOps(
        n_max=n_max,
        D=ops.c[0] @ ops.c[1],
        X=x,
        X_ladder=ops.c_dag[0] @ ops.c_dag[1],
    )


def _diagonal_indices(n_max: int) -> List[int]:
    return [n * (n_max + 1) + n for n in range(n_max + 1)]


def diagonal_intertwining_deviation(n_max: int) -> float:
    """
    Max deviation of (D~, X~) restricted to span{|n,n>}, read through |n,n> -> x^n,
    from (D, X) on monomials, over the interior block n < n_max.
    """
    t = tilde_ops(n_max)
    x, d = position_derivative_rep(n_max)
    diag = _diagonal_indices(n_max)
    inner = list(range(n_max))
    worst = 0.0
    for tilde, plain in ((t.D, d), (t.X, x)):
        block = tilde.restrict(diag, diag)
        worst = max(worst, max_abs(block[np.ix_(inner, inner)] - plain.restrict(inner, inner)))
    return worst


def diagonal_leakage(n_max: int) -> float:
    """How much D~ and X~ move span{|n,n>} outside itself."""
    t = tilde_ops(n_max)
    dim = (n_max + 1) ** 2
    off = np.ones(dim)
    off[_diagonal_indices(n_max)] = 0.0
    p_off = sp.diags(off)
    p_on = sp.diags(1.0 - off)
    return max(max_abs(p_off @ t.D.matrix @ p_on), max_abs(p_off @ t.X.matrix @ p_on))


def tilde_commutator_diagonal(n_max: int) -> np.ndarray:
    """<n,n| [D~, c0* c1*] |n,n> for n = 0..n_max."""
    t = tilde_ops(n_max)
    comm = commutator(t.D, t.X_ladder)
    return np.array([comm.entry(i, i) for i in _diagonal_indices(n_max)])


# ========= Randomized helpers =========

def random_star(rng: np.random.Generator) -> StellarPoint:
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return StellarPoint(alpha=v[0], beta=v[1]).canonical()


def _min_separation(points: Sequence[StellarPoint]) -> float:
    if len(points) < 2:
        return 1.0
    return min(chordal_distance(a, b) for i, a in enumerate(points) for b in points[i + 1:])


def random_configuration(
    k: int, rng: np.random.Generator, min_separation: float = ROOT_SEPARATION
) -> StarConfiguration:
    """k random stars pairwise at least min_separation apart, with a random scale."""
    while True:
        stars = [random_star(rng) for _ in range(k)]
        if _min_separation(stars) >= min_separation:
            break
    scale = complex(rng.standard_normal(), rng.standard_normal())
    return StarConfiguration(stars=canonical_order(stars), scale=scale or 1.0)


# ========= Verification =========

def verify_stellar(
    seed: int | None = None,
    degrees: Sequence[int] = tuple(range(2, 13)),
    samples: int = 200,
    tol: float = 1e-8,
    star_tol: float = 1e-7,
) -> VerificationReport:
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    report = VerificationReport(
        suite="stellar", tol=tol, parameters={"seed": seed, "samples": samples, "max_degree": max(degrees)}
    )
    for k in degrees:
        worst_poly = worst_star = 0.0
        for _ in range(samples):
            cfg = random_configuration(k, rng)
            p = poly_from_stars(cfg)
            back = stars_from_poly(p)
            worst_poly = max(worst_poly, relative_deviation(p, poly_from_stars(back)))
            worst_star = max(worst_star, star_set_distance(cfg.stars, back.stars))
        report.add("poly->stars->poly", worst_poly, i=k)
        report.add("stars->poly->stars", worst_star, i=k, tol=star_tol)

        # leading zeros become exactly that many pole stars
        for n_poles in range(1, k + 1):
            tail = rng.standard_normal(k + 1 - n_poles) + 1j * rng.standard_normal(k + 1 - n_poles)
            cfg = stars_from_poly(HomogeneousPoly(k=k, coeffs=np.concatenate([np.zeros(n_poles), tail])))
            poles = [s for s in cfg.stars if s.is_pole]
            exact = len(poles) == n_poles and all(s == POLE for s in poles)
            report.add("pole-count", 0.0 if exact else 1.0, i=k, j=n_poles, tol=0.0)

        # (alpha xi - beta eta)^k differentiates to a multiple of (alpha xi - beta eta)^(k-1)
        star = random_star(rng)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        dp = directional_derivative(poly_from_stars(StarConfiguration(stars=(star,) * k)), v)
        expected = poly_from_stars(StarConfiguration(stars=(star,) * (k - 1)))
        report.add("coincident-eigenconfiguration", proportionality_deviation(expected, dp), i=k)

    worst_pair = 0.0
    for _ in range(samples):
        star = random_star(rng)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        merged = stars_from_poly(directional_derivative(poly_from_stars(StarConfiguration(stars=(star, star))), v))
        worst_pair = max(worst_pair, star_set_distance(merged.stars, (star,)))
    report.add("coincident-pair-merge", worst_pair, tol=star_tol)

    for n_max in (4, 8):
        report.add("tilde-diagonal-intertwining", diagonal_intertwining_deviation(n_max), i=n_max,
                   tol=settings.TOL_ALGEBRA)
        report.add("tilde-diagonal-leakage", diagonal_leakage(n_max), i=n_max, tol=settings.TOL_ALGEBRA)
        diag = tilde_commutator_diagonal(n_max)[:n_max]
        expected = 2 * np.arange(n_max) + 1
        report.add("[D~,c0*c1*]|n,n>-(2n+1)", max_abs(diag - expected), i=n_max, tol=settings.TOL_ALGEBRA)
    return report
