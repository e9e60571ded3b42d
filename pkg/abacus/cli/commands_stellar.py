# abacus/cli/commands_stellar.py
from __future__ import annotations

import click

from abacus.deps import emit, get_run_config, parse_coeffs, parse_direction, read_payload
from abacus.schemas.stellar import PolynomialPayload, StarConfigurationPayload
from abacus.services.symmetric.stellar import directional_derivative, poly_from_stars, stars_from_poly
from abacus.services.symmetric.sym_space import HomogeneousPoly

COEFFS_HELP = "Comma-separated a_k,...,a_0: the coefficient of xi^i eta^(k-i) is a_i, highest power of xi first."


def _poly_payload(p: HomogeneousPoly) -> PolynomialPayload:
    return PolynomialPayload(k=p.k, re=p.coeffs.real.tolist(), im=p.coeffs.imag.tolist())


@click.group("stellar")
def stellar():
    """Stellar (Majorana) representation of homogeneous polynomials."""


@stellar.command("to-stars")
@click.option("--coeffs", required=True, help=COEFFS_HELP)
@click.pass_context
def to_stars(ctx: click.Context, coeffs: str):
    """Factor p into k points on the Riemann sphere."""
    cfg = stars_from_poly(HomogeneousPoly.from_coeffs(parse_coeffs(coeffs)))
    emit(StarConfigurationPayload.from_configuration(cfg), get_run_config(ctx))


@stellar.command("from-stars")
@click.option("--stars-json", type=click.File("rb"), required=True, help="Star configuration JSON file, - for stdin.")
@click.pass_context
def from_stars(ctx: click.Context, stars_json):
    """Expand scale * prod(alpha_i xi - beta_i eta)."""
    payload = read_payload(stars_json, StarConfigurationPayload)
    emit(_poly_payload(poly_from_stars(payload.to_configuration())), get_run_config(ctx))


@stellar.command("derive")
@click.option("--coeffs", required=True, help=COEFFS_HELP)
@click.option("--direction", required=True, help="v1,v2 for v1 d/dxi + v2 d/deta.")
@click.pass_context
def derive(ctx: click.Context, coeffs: str, direction: str):
    """Directional derivative of p and the stars of the result."""
    dp = directional_derivative(HomogeneousPoly.from_coeffs(parse_coeffs(coeffs)), parse_direction(direction))
    stars = None if dp.is_zero() else StarConfigurationPayload.from_configuration(stars_from_poly(dp))
    emit({"poly": _poly_payload(dp), "stars": stars}, get_run_config(ctx))
