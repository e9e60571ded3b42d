# abacus/services/oscillator/oscillator.py
"""
Two-mode oscillator built from the truncated ladders: H = hbar omega (N0 + N1 + 1).
The energy-n level is span{|n-j, j>}, matched with Sy_n(H2) by |n-j, j> -> e~_{n-j,j}.
"""
from __future__ import annotations

import logging
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from abacus.core.config import settings
from abacus.core.errors import InvalidArgument, ShapeMismatch
from abacus.schemas.oscillator import DegeneracyRow
from abacus.schemas.report import VerificationReport
from abacus.services.operators.fock_ccr import BosonLadder, FockCutoff, OccupationBasis, boson_ladder, number_operator
from abacus.services.operators.sparse import SparseComplexOperator, identity_on, max_abs
from abacus.services.symmetric.sym_space import sym_ladder

logger = logging.getLogger(__name__)


class OscillatorSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega: float = 1.0
    hbar: float = 1.0
    n_max: int

    @field_validator("omega", "hbar")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("omega and hbar must be > 0")
        return v

    @field_validator("n_max")
    @classmethod
    def _cutoff(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"n_max must be >= 1, got {v}")
        return v

    @property
    def cutoff(self) -> FockCutoff:
        return FockCutoff(modes=2, n_max=self.n_max)

    @property
    def quantum(self) -> float:
        return self.hbar * self.omega


def _ladder(spec: OscillatorSpec) -> BosonLadder:
    return boson_ladder(spec.cutoff)


def total_quanta(spec: OscillatorSpec) -> np.ndarray:
    """n0 + n1 per occupation-basis index."""
    return OccupationBasis(cutoff=spec.cutoff).table().sum(axis=1)


def hamiltonian_2d(spec: OscillatorSpec) -> SparseComplexOperator:
    ops = _ladder(spec)
    total = number_operator(ops, 0) + number_operator(ops, 1) + identity_on(ops.c[0].row_basis)
    return total * spec.quantum


def degeneracy_table(spec: OscillatorSpec) -> List[DegeneracyRow]:
    """Multiplicity of each energy (n+1) hbar omega; levels above n_max are flagged as truncated."""
    counts = np.bincount(total_quanta(spec))
    return [
        DegeneracyRow(n=n, energy=(n + 1) * spec.quantum, multiplicity=int(c), truncated=n > spec.n_max)
        for n, c in enumerate(counts)
    ]


def level_indices(n: int, spec: OscillatorSpec) -> List[int]:
    """Occupation indices of |n-j, j> for j = 0..n (states outside the cutoff are dropped)."""
    basis = OccupationBasis(cutoff=spec.cutoff)
    return [basis.index((n - j, j)) for j in range(n + 1) if n - j <= spec.n_max and j <= spec.n_max]


def block_isomorphism_check(n: int, spec: OscillatorSpec, tol: float | None = None) -> VerificationReport:
    """
    Level n is the (n+1)-dimensional span of |n-j, j>, and the two-mode ladders restricted to
    it coincide with sym_ladder(n). Raising is compared only while level n+1 lies inside the cutoff.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidArgument(f"level must be a non-negative integer, got {n!r}")
    if n > spec.n_max:
        raise InvalidArgument(f"level {n} exceeds the cutoff n_max={spec.n_max}")
    tol = settings.TOL_ALGEBRA if tol is None else tol
    report = VerificationReport(suite="oscillator-block", tol=tol, parameters={"level": n, "n_max": spec.n_max})
    ops = _ladder(spec)
    here = level_indices(n, spec)
    energies = hamiltonian_2d(spec).diagonal()
    eigenspace = np.flatnonzero(np.isclose(energies.real, (n + 1) * spec.quantum, rtol=0, atol=tol * spec.quantum))
    report.add("eigenspace-is-span{|n-j,j>}", 0.0 if sorted(eigenspace) == sorted(here) else 1.0, tol=0.0)
    report.add("dim-(n+1)", abs(len(here) - (n + 1)), tol=0.0)

    sym = sym_ladder(n)
    below = level_indices(n - 1, spec) if n >= 1 else []
    report.add("c0|block-sym c0", max_abs(ops.c[0].restrict(below, here) - sym.c0.toarray()), i=0)
    report.add("c1|block-sym c1", max_abs(ops.c[1].restrict(below, here) - sym.c1.toarray()), i=1)
    if n < spec.n_max:
        above = level_indices(n + 1, spec)
        report.add("c0*|block-sym c0*", max_abs(ops.c_dag[0].restrict(above, here) - sym.c0_dag.toarray()), i=0)
        report.add("c1*|block-sym c1*", max_abs(ops.c_dag[1].restrict(above, here) - sym.c1_dag.toarray()), i=1)
    return report


def evolve_phases(amplitudes, spec: OscillatorSpec, t: float, sign: int | None = None) -> np.ndarray:
    """
    Occupation amplitudes times exp(sign i E_n t / hbar), sign defaulting to settings.TIME_SIGN.

    With E_n = hbar omega (n0 + n1 + 1) the phase is exp(sign i (n + 1) omega t), independent of hbar.
    """
    sign = settings.TIME_SIGN if sign is None else sign
    if sign not in (1, -1):
        raise InvalidArgument(f"sign must be +1 or -1, got {sign}")
    amps = np.asarray(amplitudes, dtype=np.complex128)
    energies = (total_quanta(spec) + 1) * spec.quantum
    if amps.shape != energies.shape:
        raise ShapeMismatch(f"expected {energies.shape[0]} amplitudes, got {amps.shape}")
    return amps * np.exp(sign * 1j * energies * t / spec.hbar)


def verify_oscillator(n_max: int = 10, tol: float | None = None, seed: int | None = None) -> VerificationReport:
    tol = settings.TOL_ALGEBRA if tol is None else tol
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    spec = OscillatorSpec(n_max=n_max)
    report = VerificationReport(suite="oscillator", tol=tol, parameters={"n_max": n_max, "seed": seed})

    h = hamiltonian_2d(spec)
    quanta = total_quanta(spec)
    report.add("H-diagonal", max_abs(h - SparseComplexOperator.on(np.diag(h.diagonal()), h.row_basis)))
    report.add("H-(n0+n1+1)", max_abs(h.diagonal() - (quanta + 1) * spec.quantum))

    # multiplicities straight from the spectrum, no tolerance
    levels, mult = np.unique(np.rint(h.diagonal().real).astype(int), return_counts=True)
    for level, count in zip(levels, mult):
        n = int(level) - 1
        if n <= n_max:
            report.add("multiplicity-(n+1)", abs(int(count) - (n + 1)), i=n, tol=0.0)

    doubled = hamiltonian_2d(OscillatorSpec(n_max=n_max, omega=2 * spec.omega))
    report.add("H(2w)-2H(w)", max_abs(doubled - h * 2))

    for n in range(min(n_max, 12) + 1):
        block = block_isomorphism_check(n, spec, tol)
        ladder = [c.max_abs_deviation for c in block.checks if "|block" in c.relation]
        report.add("block-ladder", max(ladder), i=n)
        report.add("block-structure", 0.0 if block.passed else 1.0, i=n, tol=0.0)

    psi = rng.standard_normal(quanta.size) + 1j * rng.standard_normal(quanta.size)
    t = float(rng.uniform(0.1, 2.0))
    moved = evolve_phases(psi, spec, t)
    report.add("evolve-norm", abs(np.linalg.norm(moved) - np.linalg.norm(psi)))
    phases = moved / psi
    report.add("evolve-phase", max_abs(phases - np.exp(settings.TIME_SIGN * 1j * (quanta + 1) * spec.quantum * t)))
    return report
