"""
Clifford generators and fermionic ladders.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from abacus.core.errors import BudgetExceeded, InvalidArgument
from abacus.services.operators.car_clifford import (
    FermionLadder,
    clifford_generators,
    fermion_ladder_from_clifford,
    fermion_ladder_jordan_wigner,
    ladder_deviation,
    ladder_span_rank,
    pauli_basis,
    verify_car,
    verify_clifford,
)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 14, 16])
def test_clifford_relations(n):
    gens = clifford_generators(n)
    assert len(gens.mats) == n
    assert gens.mats[0].shape == (gens.dim, gens.dim)
    assert verify_clifford(gens).passed


def test_cl2_is_pauli_x_and_y():
    sx, sy, _, _ = pauli_basis()
    gens = clifford_generators(2)
    assert np.allclose(gens.mats[0].toarray(), sx)
    assert np.allclose(gens.mats[1].toarray(), sy)


@pytest.mark.parametrize("n", [0, 3, -2])
def test_clifford_rejects_odd_or_small(n):
    with pytest.raises(InvalidArgument):
        clifford_generators(n)


def test_clifford_generator_cap():
    with pytest.raises(BudgetExceeded):
        clifford_generators(42)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("build", [fermion_ladder_from_clifford, fermion_ladder_jordan_wigner])
def test_car_relations(m, build):
    ops = build(m)
    assert ops.dim == 2**m
    report = verify_car(ops)
    assert report.passed
    assert report.worst() <= 1e-12


def test_single_mode_ladder():
    expected = np.array([[0, 1], [0, 0]])
    assert np.allclose(fermion_ladder_jordan_wigner(1).a[0].toarray(), expected)
    assert np.allclose(fermion_ladder_from_clifford(1).a[0].toarray(), expected)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8])
def test_clifford_and_jordan_wigner_agree(m):
    assert ladder_deviation(fermion_ladder_from_clifford(m), fermion_ladder_jordan_wigner(m)) <= 1e-12


def test_generator_pairs_run_backwards():
    ops = fermion_ladder_from_clifford(3)
    assert ops.generator_pairs == ((4, 5), (2, 3), (0, 1))


def test_nilpotent_and_number_spectrum():
    ops = fermion_ladder_jordan_wigner(3)
    for a, a_dag in zip(ops.a, ops.a_dag):
        assert (a @ a).max_abs() == 0.0
        number = (a_dag @ a).toarray()
        assert set(np.round(np.diag(number).real, 12)) == {0.0, 1.0}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ladders_generate_full_matrix_algebra(m):
    assert ladder_span_rank(fermion_ladder_jordan_wigner(m)) == 4**m


def test_modes_must_be_positive():
    with pytest.raises(InvalidArgument):
        fermion_ladder_jordan_wigner(0)
    with pytest.raises(InvalidArgument):
        fermion_ladder_from_clifford(0)


def test_dense_refused_above_limit(override_settings):
    override_settings(DENSE_MODES_LIMIT=2)
    fermion_ladder_jordan_wigner(2).to_dense()
    with pytest.raises(BudgetExceeded):
        fermion_ladder_jordan_wigner(3).to_dense()


def test_nnz_budget_refuses_large_ladder(override_settings):
    override_settings(NNZ_BUDGET=100)
    with pytest.raises(BudgetExceeded):
        fermion_ladder_jordan_wigner(6)


def test_ladder_rejects_non_adjoint_pair():
    ops = fermion_ladder_jordan_wigner(1)
    with pytest.raises(ValidationError):
        FermionLadder(modes=1, a=ops.a, a_dag=ops.a)
