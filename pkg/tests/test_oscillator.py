"""
Two-mode oscillator: spectrum, degeneracies and the level-by-level match with Sy_n(H2).
"""
import numpy as np
import pytest
from pydantic import ValidationError

from abacus.core.errors import InvalidArgument, ShapeMismatch
from abacus.services.operators.fock_ccr import OccupationBasis
from abacus.services.oscillator.oscillator import (
    OscillatorSpec,
    block_isomorphism_check,
    degeneracy_table,
    evolve_phases,
    hamiltonian_2d,
    level_indices,
    total_quanta,
    verify_oscillator,
)


def test_hamiltonian_diagonal():
    spec = OscillatorSpec(n_max=2)
    h = hamiltonian_2d(spec).diagonal().real
    basis = OccupationBasis(cutoff=spec.cutoff)
    assert h[basis.index((0, 0))] == pytest.approx(1.0)
    assert h[basis.index((1, 1))] == pytest.approx(3.0)
    assert h[basis.index((2, 1))] == pytest.approx(4.0)


def test_hamiltonian_scales_with_quantum():
    h = hamiltonian_2d(OscillatorSpec(n_max=3, omega=2.0, hbar=0.5)).diagonal().real
    assert np.allclose(h, hamiltonian_2d(OscillatorSpec(n_max=3)).diagonal().real)
    h3 = hamiltonian_2d(OscillatorSpec(n_max=3, omega=3.0)).diagonal().real
    assert np.allclose(h3, 3 * hamiltonian_2d(OscillatorSpec(n_max=3)).diagonal().real)


def test_degeneracies_up_to_cutoff():
    rows = degeneracy_table(OscillatorSpec(n_max=10))
    assert [r.multiplicity for r in rows[:11]] == list(range(1, 12))
    assert not any(r.truncated for r in rows[:11])
    assert all(r.truncated for r in rows[11:])
    assert rows[-1].n == 20
    assert rows[4].energy == pytest.approx(5.0)


def test_level_indices():
    spec = OscillatorSpec(n_max=3)
    basis = OccupationBasis(cutoff=spec.cutoff)
    assert level_indices(2, spec) == [basis.index((2, 0)), basis.index((1, 1)), basis.index((0, 2))]


@pytest.mark.parametrize("n, n_max", [(0, 3), (1, 3), (3, 3), (5, 8), (10, 10)])
def test_block_matches_symmetric_ladder(n, n_max):
    report = block_isomorphism_check(n, OscillatorSpec(n_max=n_max))
    assert report.passed
    relations = {c.relation for c in report.checks}
    assert ("c0*|block-sym c0*" in relations) == (n < n_max)


def test_block_above_cutoff_is_rejected():
    with pytest.raises(InvalidArgument):
        block_isomorphism_check(4, OscillatorSpec(n_max=3))
    with pytest.raises(InvalidArgument):
        block_isomorphism_check(-1, OscillatorSpec(n_max=3))


def test_evolve_phases_sign_convention(rng):
    spec = OscillatorSpec(n_max=2)
    amps = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    forward = evolve_phases(amps, spec, 0.7)
    backward = evolve_phases(amps, spec, 0.7, sign=-1)
    assert np.linalg.norm(forward) == pytest.approx(np.linalg.norm(amps))
    # ground state |0,0> has energy 1
    assert forward[0] / amps[0] == pytest.approx(np.exp(0.7j))
    assert backward[0] / amps[0] == pytest.approx(np.exp(-0.7j))


def test_evolve_phases_follows_settings(override_settings):
    override_settings(TIME_SIGN=-1)
    out = evolve_phases(np.eye(9)[0], OscillatorSpec(n_max=2), 1.0)
    assert out[0] == pytest.approx(np.exp(-1j))


def test_evolve_phases_phase_is_quanta_times_omega_t():
    spec = OscillatorSpec(n_max=3, omega=1.5, hbar=2.5)
    n = total_quanta(spec)
    out = evolve_phases(np.ones(n.shape[0]), spec, 0.4, sign=1)
    assert np.allclose(out, np.exp(1j * (n + 1) * 1.5 * 0.4))


def test_evolve_phases_validation():
    spec = OscillatorSpec(n_max=2)
    with pytest.raises(ShapeMismatch):
        evolve_phases(np.ones(4), spec, 1.0)
    with pytest.raises(InvalidArgument):
        evolve_phases(np.ones(9), spec, 1.0, sign=2)


def test_spec_validation():
    with pytest.raises(ValidationError):
        OscillatorSpec(n_max=3, omega=0)
    with pytest.raises(ValidationError):
        OscillatorSpec(n_max=0)


def test_verify_oscillator_small():
    assert verify_oscillator(n_max=6, seed=1).passed
