"""
Symmetric powers: projector, embedding, flavors, inner products, SU(2) action and ladders.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from abacus.core.errors import BudgetExceeded, InvalidArgument, ShapeMismatch
from abacus.services.operators.sparse import identity_on, max_abs
from abacus.services.symmetric.sym_space import (
    HomogeneousPoly,
    SymBasisVector,
    SymVector,
    apply_ladder,
    apply_symmetrizer,
    basis_convert,
    embed_sym,
    gram_matrix,
    inner_product,
    poly_from_sym,
    polynomial_ladder,
    random_sym_vector,
    random_unitary,
    su2_induced,
    sym_dim,
    sym_from_poly,
    sym_ladder,
    symmetrize_tensor,
    symmetrizer,
    verify_sym_space,
)


@pytest.mark.parametrize("k, dim", [(0, 1), (1, 2), (5, 6)])
def test_sym_dim(k, dim):
    assert sym_dim(k) == dim


def test_sym_dim_rejects_negative():
    with pytest.raises(InvalidArgument):
        sym_dim(-1)


def test_symmetrizer_on_two_qubits():
    p = symmetrizer(2)
    mixed = p @ np.array([0, 1, 0, 0])
    assert np.allclose(mixed, [0, 0.5, 0.5, 0])
    assert np.linalg.norm(mixed) == pytest.approx(1 / math.sqrt(2))
    assert np.allclose(p @ np.array([1, 0, 0, 0]), [1, 0, 0, 0])


@pytest.mark.parametrize("k", [1, 2, 3, 4, 6])
def test_symmetrizer_is_orthogonal_projector_of_rank_k_plus_1(k):
    p = symmetrizer(k)
    assert max_abs(p @ p - p) <= 1e-12
    assert max_abs(p - p.H) <= 1e-12
    assert np.linalg.matrix_rank(p.toarray()) == k + 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_symmetrizer_matches_brute_force(k, rng):
    t = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    assert np.allclose(symmetrizer(k) @ t, symmetrize_tensor(t, k), atol=1e-12)


def test_embedding_columns():
    assert np.allclose(embed_sym(1).toarray(), np.eye(2))
    assert np.allclose(embed_sym(2).column(1), [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])
    assert embed_sym(0).shape == (1, 1)


@pytest.mark.parametrize("k", [1, 3, 5])
def test_embedding_is_isometry(k):
    e = embed_sym(k)
    assert max_abs(e.H @ e - identity_on(e.col_basis)) <= 1e-12


def test_tensor_grade_cap():
    with pytest.raises(BudgetExceeded):
        symmetrizer(17)


def test_symmetrizer_nnz_budget():
    # C(24, 12) nonzeros is above the default budget
    with pytest.raises(BudgetExceeded):
        symmetrizer(12)


@pytest.mark.parametrize("k", [2, 5])
def test_apply_symmetrizer_matches_projector(k, rng):
    t = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    assert np.allclose(apply_symmetrizer(t, k), symmetrizer(k) @ t, atol=1e-12)


def test_apply_symmetrizer_above_projector_budget(rng):
    k = 14
    t = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    once = apply_symmetrizer(t, k)
    assert np.allclose(apply_symmetrizer(once, k), once, atol=1e-12)
    # swapping the first two cells leaves a symmetric tensor unchanged
    swapped = np.swapaxes(once.reshape((2,) * k), 0, 1).reshape(-1)
    assert np.allclose(swapped, once, atol=1e-12)


def test_apply_symmetrizer_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        apply_symmetrizer(np.zeros(3), 2)


def test_tilde_basis_is_orthonormal():
    v = SymBasisVector(k=2, i=1).vector()
    assert inner_product(v, v) == pytest.approx(1.0)
    assert inner_product(v, v, kind="exp") == pytest.approx(0.5)


def test_e_basis_norms():
    e21 = SymBasisVector(k=3, i=2, flavor="e").vector()
    assert inner_product(e21, e21) == pytest.approx(2.0)
    assert np.allclose(np.diag(gram_matrix(3, "e")), [6, 2, 2, 6])
    assert np.allclose(np.diag(gram_matrix(3, "e", "exp")), [1, 1 / 3, 1 / 3, 1])


def test_basis_convert():
    e20 = SymVector(k=2, coeffs=[1, 0, 0], flavor="e")
    assert np.allclose(basis_convert(e20, "tilde").coeffs, [math.sqrt(2), 0, 0])
    e_tilde_03 = SymBasisVector(k=3, i=0).vector()
    assert np.allclose(basis_convert(e_tilde_03, "e").coeffs, [0, 0, 0, 1 / math.sqrt(6)])


def test_basis_convert_round_trip(rng):
    v = random_sym_vector(7, rng)
    back = basis_convert(basis_convert(v, "e"), "tilde")
    assert np.allclose(back.coeffs, v.coeffs)
    assert inner_product(basis_convert(v, "e"), v) == pytest.approx(1.0)


def test_large_grade_weights_use_log_gamma():
    v = SymBasisVector(k=30, i=15).vector()
    e = basis_convert(v, "e")
    assert e.coeffs[15] == pytest.approx(1 / math.factorial(15), rel=1e-12)


def test_graded_inner_product_skips_missing_grades(rng):
    a = random_sym_vector(2, rng)
    b = random_sym_vector(3, rng)
    assert inner_product({2: a, 3: b}, {3: b}) == pytest.approx(1.0)
    assert inner_product({2: a}, {3: b}) == 0


def test_single_grades_must_match(rng):
    with pytest.raises(ShapeMismatch):
        inner_product(random_sym_vector(2, rng), random_sym_vector(3, rng))


def test_polynomial_round_trip():
    p = HomogeneousPoly.from_coeffs([1, 2j, -3])
    v = sym_from_poly(p)
    assert v.flavor == "e"
    assert np.allclose(poly_from_sym(basis_convert(v, "tilde")).coeffs, p.coeffs)


def test_su2_identity_and_grade_one():
    assert np.allclose(su2_induced(np.eye(2), 4).toarray(), np.eye(5))
    u = random_unitary(2, np.random.default_rng(7))
    assert np.allclose(su2_induced(u, 1).toarray(), u)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_su2_homomorphism_and_unitarity(k, rng):
    u1, u2 = random_unitary(2, rng), random_unitary(2, rng)
    d1 = su2_induced(u1, k).toarray()
    d2 = su2_induced(u2, k).toarray()
    assert np.allclose(su2_induced(u1 @ u2, k).toarray(), d1 @ d2, atol=1e-10)
    assert np.allclose(d1.conj().T @ d1, np.eye(k + 1), atol=1e-10)


@pytest.mark.parametrize("k", [1, 4, 12])
def test_su2_routes_agree(k, rng):
    u = random_unitary(2, rng)
    by_embedding = su2_induced(u, k, method="embedding").toarray()
    by_polynomial = su2_induced(u, k, method="polynomial").toarray()
    assert np.allclose(by_embedding, by_polynomial, atol=1e-10)


def test_su2_above_tensor_cap_uses_polynomial_route(rng):
    u = random_unitary(2, rng)
    d = su2_induced(u, 20).toarray()
    assert np.allclose(d.conj().T @ d, np.eye(21), atol=1e-8)


def test_su2_rejects_non_unitary():
    with pytest.raises(InvalidArgument):
        su2_induced([[1, 1], [0, 1]], 2)
    with pytest.raises(InvalidArgument):
        su2_induced(np.eye(3), 2)


def test_ladder_examples():
    ladder = sym_ladder(3)
    # c0 e~_{2,1} = sqrt2 e~_{1,1}
    out = ladder.c0 @ SymBasisVector(k=3, i=2).vector().coeffs
    assert np.allclose(out, [0, math.sqrt(2), 0])
    # c0 e_{2,1} = 2 e_{1,1}
    assert sym_ladder(3, "e").c0.entry(1, 1) == pytest.approx(2.0)
    # c1* e~_{0,0} = e~_{0,1}
    assert np.allclose(sym_ladder(0).c1_dag.toarray(), [[0], [1]])


def test_lowering_from_grade_zero_is_empty():
    ladder = sym_ladder(0)
    assert ladder.c0.shape == (0, 1)
    assert apply_ladder(SymBasisVector(k=0, i=0).vector(), 0, dagger=False) is None


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_number_identity_per_grade(k):
    here, below = sym_ladder(k), sym_ladder(k - 1)
    number = below.c0_dag @ here.c0 + below.c1_dag @ here.c1
    assert max_abs(number - identity_on(here.c0.col_basis) * k) <= 1e-12


@pytest.mark.parametrize("k", [1, 3, 6])
def test_e_flavor_ladder_is_derivative_and_multiplication(k):
    in_e = sym_ladder(k, "e")
    direct = polynomial_ladder(k)
    for name, mat in direct.items():
        assert np.allclose(getattr(in_e, name).toarray(), mat)


def test_apply_ladder_raises_grade():
    v = apply_ladder(SymBasisVector(k=1, i=1).vector(), 0, dagger=True)
    assert v.k == 2
    assert np.allclose(v.coeffs, [math.sqrt(2), 0, 0])


def test_sym_vector_validation():
    with pytest.raises(ValidationError):
        SymVector(k=2, coeffs=[1, 0])
    with pytest.raises(ValidationError):
        SymBasisVector(k=2, i=3)
    with pytest.raises(InvalidArgument):
        HomogeneousPoly.from_coeffs([])


def test_verify_sym_space_small():
    report = verify_sym_space(k_max=5, seed=3, su2_grade_max=4, su2_pairs=5)
    assert report.passed


def test_verify_sym_space_past_projector_budget(override_settings):
    override_settings(NNZ_BUDGET=5000)
    report = verify_sym_space(k_max=12, seed=3, su2_grade_max=1, su2_pairs=2)
    assert report.passed
    top = [c for c in report.checks if c.i == 12]
    assert {c.relation for c in top} >= {"E^H E-I", "P^2-P"}
    assert not any(c.relation == "P-P^H" for c in top)
