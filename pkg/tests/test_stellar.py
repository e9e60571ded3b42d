"""
Stellar representation, directional derivatives and the diagonal-subspace operators.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from abacus.core.errors import InvalidArgument
from abacus.services.symmetric.stellar import (
    POLE,
    StarConfiguration,
    StellarPoint,
    canonical_order,
    chordal_distance,
    diagonal_intertwining_deviation,
    diagonal_leakage,
    directional_derivative,
    poly_from_stars,
    proportionality_deviation,
    random_configuration,
    relative_deviation,
    star_from_root,
    star_set_distance,
    stars_from_poly,
    tilde_commutator_diagonal,
    tilde_ops,
    verify_stellar,
)
from abacus.services.symmetric.sym_space import HomogeneousPoly


def poly(*coeffs):
    return HomogeneousPoly.from_coeffs(coeffs)


def test_difference_of_squares():
    cfg = stars_from_poly(poly(1, 0, -1))
    assert np.allclose(cfg.zetas(), [-1, 1])
    assert cfg.scale == pytest.approx(2.0)
    assert np.allclose(poly_from_stars(cfg).coeffs, [1, 0, -1])


def test_eta_squared_is_a_double_pole():
    cfg = stars_from_poly(poly(0, 0, 1))
    assert cfg.stars == (POLE, POLE)
    assert cfg.scale == pytest.approx(1.0)


def test_single_pole_star_gives_minus_eta():
    p = poly_from_stars(StarConfiguration(stars=(POLE,)))
    assert np.allclose(p.coeffs, [0, -1])


def test_double_root_at_zero_is_xi_squared():
    zero = star_from_root(0)
    p = poly_from_stars(StarConfiguration(stars=(zero, zero)))
    assert np.allclose(p.coeffs, [1, 0, 0])


def test_poles_sort_last():
    stars = canonical_order([POLE, star_from_root(2), star_from_root(-1 + 1j)])
    assert stars[-1] == POLE
    assert stars[0].zeta == pytest.approx(-1 + 1j)


@pytest.mark.parametrize("k", [1, 3, 6, 10])
def test_random_round_trip(k, rng):
    cfg = random_configuration(k, rng)
    p = poly_from_stars(cfg)
    back = stars_from_poly(p)
    assert relative_deviation(p, poly_from_stars(back)) <= 1e-8
    assert star_set_distance(cfg.stars, back.stars) <= 1e-7


def test_leading_zeros_become_poles():
    cfg = stars_from_poly(poly(0, 0, 1, 2))
    poles = [s for s in cfg.stars if s.is_pole]
    assert len(poles) == 2
    finite = [s for s in cfg.stars if not s.is_pole]
    # xi eta^2 + 2 eta^3 = eta^2 (xi + 2 eta), root zeta = -2
    assert finite[0].zeta == pytest.approx(-2.0)


def test_zero_polynomial_has_no_stars():
    with pytest.raises(InvalidArgument):
        stars_from_poly(poly(0, 0, 0))


def test_derivative_of_xi_power_along_eta_vanishes():
    assert directional_derivative(poly(1, 0, 0, 0), (0, 1)).is_zero()


def test_derivative_of_xi_eta():
    dp = directional_derivative(poly(0, 1, 0), (1, 1))
    assert np.allclose(dp.coeffs, [1, 1])
    assert stars_from_poly(dp).zetas()[0] == pytest.approx(-1.0)


def test_derivative_is_linear(rng):
    p = HomogeneousPoly(k=4, coeffs=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    q = HomogeneousPoly(k=4, coeffs=rng.standard_normal(5))
    v = (0.3 + 1j, -2.0)
    combo = HomogeneousPoly(k=4, coeffs=2 * p.coeffs - 1j * q.coeffs)
    expected = 2 * directional_derivative(p, v).coeffs - 1j * directional_derivative(q, v).coeffs
    assert np.allclose(directional_derivative(combo, v).coeffs, expected)


def test_coincident_stars_survive_differentiation():
    star = star_from_root(0.5 - 0.25j)
    p = poly_from_stars(StarConfiguration(stars=(star, star, star)))
    dp = directional_derivative(p, (1.0, 2.0j))
    expected = poly_from_stars(StarConfiguration(stars=(star, star)))
    assert proportionality_deviation(expected, dp) <= 1e-12


def test_coincident_pair_merges_to_one_star():
    star = star_from_root(-0.7 + 1.5j)
    dp = directional_derivative(poly_from_stars(StarConfiguration(stars=(star, star))), (2.0, 1j))
    assert star_set_distance(stars_from_poly(dp).stars, (star,)) <= 1e-12


def test_derivative_rejects_zero_direction_and_constants():
    with pytest.raises(InvalidArgument):
        directional_derivative(poly(1, 2), (0, 0))
    with pytest.raises(InvalidArgument):
        directional_derivative(poly(5), (1, 0))


def test_chordal_distance():
    zero = star_from_root(0)
    assert chordal_distance(zero, POLE) == pytest.approx(1.0)
    assert chordal_distance(zero, zero) == pytest.approx(0.0)
    assert chordal_distance(star_from_root(1), star_from_root(-1)) == pytest.approx(1.0)


def test_star_set_distance_edge_cases():
    assert star_set_distance([], []) == 0.0
    assert star_set_distance([POLE], []) == 1.0


def test_point_and_configuration_validation():
    with pytest.raises(ValidationError):
        StellarPoint(alpha=0, beta=0)
    with pytest.raises(ValidationError):
        StarConfiguration(stars=(POLE,), scale=0)


def test_canonical_point_has_real_positive_lead():
    p = StellarPoint(alpha=2j, beta=2).canonical()
    assert p.alpha == pytest.approx(1 / math.sqrt(2))
    assert p.beta == pytest.approx(-1j / math.sqrt(2))


def test_tilde_ops_entries():
    ops = tilde_ops(3)
    # |2,2> has index 2*4+2 = 10 and |1,1> index 5
    assert ops.D.entry(5, 10) == pytest.approx(2.0)
    assert ops.X.entry(10, 5) == pytest.approx(1.0)
    assert ops.X_ladder.entry(10, 5) == pytest.approx(2.0)
    # D~ annihilates |0,n>
    assert np.allclose(tilde_ops(5).D.column(5), 0.0)


@pytest.mark.parametrize("n_max", [4, 6])
def test_diagonal_subspace_reproduces_position_and_derivative(n_max):
    assert diagonal_intertwining_deviation(n_max) <= 1e-12
    assert diagonal_leakage(n_max) <= 1e-12


def test_commutator_on_diagonal_is_odd_integers():
    diag = tilde_commutator_diagonal(5)
    assert np.allclose(diag[:5], 2 * np.arange(5) + 1)


def test_verify_stellar_small():
    report = verify_stellar(seed=0, degrees=(2, 3, 6), samples=20)
    assert report.passed
