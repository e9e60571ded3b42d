# abacus/services/verify.py
"""Desk-scale verification suites, one function per area, aggregated by run_all."""
from __future__ import annotations

import logging
import time
from typing import Callable, Dict, List, Sequence

from abacus.core.config import settings
from abacus.schemas.report import SuiteSummary, VerificationReport
from abacus.services.operators.car_clifford import (
    clifford_generators,
    fermion_ladder_from_clifford,
    fermion_ladder_jordan_wigner,
    ladder_deviation,
    verify_car,
    verify_clifford,
)
from abacus.services.operators.fock_ccr import (
    FockCutoff,
    boson_ladder,
    commutator_defect,
    compare_representations,
    interior_indices,
    intertwine,
    position_derivative_rep,
    verify_ccr,
)
from abacus.services.operators.sparse import max_abs
from abacus.services.oscillator.oscillator import verify_oscillator
from abacus.services.symmetric.stellar import verify_stellar
from abacus.services.symmetric.sym_space import verify_sym_space
from abacus.services.tape.graded_tape import verify_tape

logger = logging.getLogger(__name__)


def car_suite(max_modes: int = 8, tol: float | None = None) -> List[VerificationReport]:
    tol = settings.TOL_ALGEBRA if tol is None else tol
    reports = []
    for m in range(1, max_modes + 1):
        cliff = fermion_ladder_from_clifford(m)
        jw = fermion_ladder_jordan_wigner(m)
        report = verify_car(cliff, tol)
        report.add("clifford-vs-jordan-wigner", ladder_deviation(cliff, jw))
        reports.append(report)
        reports.append(verify_car(jw, tol))
    return reports


def clifford_suite(max_n: int = 16, tol: float | None = None) -> List[VerificationReport]:
    return [verify_clifford(clifford_generators(n), tol) for n in range(2, max_n + 1, 2)]


def ccr_suite(n_maxes: Sequence[int] = (4, 6, 20), tol: float | None = None) -> List[VerificationReport]:
    tol = settings.TOL_ALGEBRA if tol is None else tol
    reports = []
    for n_max in n_maxes:
        ops = boson_ladder(FockCutoff(modes=1, n_max=n_max))
        report = verify_ccr(ops, tol)
        # [c, c*] has -n_max at the top state, so [c, c*] - I has -n_max - 1 there
        defect = commutator_defect(ops, 0)
        report.add("[c,c*]top+n_max", abs(defect[-1] + 1 + n_max))
        reports.append(report)
    return reports


def intertwiner_suite(n_maxes: Sequence[int] = (4, 10, 20), tol: float | None = None) -> List[VerificationReport]:
    """S^-1 c S = D and S^-1 c* S = X on the interior block, then the multimode comparison."""
    tol = settings.TOL_ALGEBRA if tol is None else tol
    reports = []
    for n_max in n_maxes:
        ops = boson_ladder(FockCutoff(modes=1, n_max=n_max))
        conj = intertwine(ops)
        x, d = position_derivative_rep(n_max)
        inner = interior_indices(ops.basis)
        report = VerificationReport(suite="intertwiner", tol=tol, parameters={"n_max": n_max})
        report.add("S^-1 c S-D", max_abs((conj["c"][0] - d).restrict(inner, inner)))
        report.add("S^-1 c* S-X", max_abs((conj["c_dag"][0] - x).restrict(inner, inner)))
        reports.append(report)
    reports.append(compare_representations(FockCutoff(modes=2, n_max=6), tol))
    return reports


def run_all(seed: int | None = None) -> SuiteSummary:
    seed = settings.DEFAULT_SEED if seed is None else seed
    suites: Dict[str, Callable[[], List[VerificationReport]]] = {
        "car": car_suite,
        "clifford": clifford_suite,
        "ccr": ccr_suite,
        "intertwiner": intertwiner_suite,
        "sym": lambda: [verify_sym_space(10, seed)],
        "stellar": lambda: [verify_stellar(seed)],
        "tape": lambda: [verify_tape(seed, K=12, samples=100)],
        "oscillator": lambda: [verify_oscillator(10, seed=seed)],
    }
    reports: List[VerificationReport] = []
    for name, suite in suites.items():
        started = time.perf_counter()
        out = suite()
        logger.info("[VERIFY] %s: %d reports, pass=%s (%.2fs)", name, len(out),
                    all(r.passed for r in out), time.perf_counter() - started)
        reports.extend(out)
    return SuiteSummary(seed=seed, reports=reports)
