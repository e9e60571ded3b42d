# abacus/cli/commands_car.py
from __future__ import annotations

import click

from abacus.deps import emit, export_operators, with_params
from abacus.services.operators.car_clifford import (
    clifford_generators,
    fermion_ladder_from_clifford,
    fermion_ladder_jordan_wigner,
    ladder_deviation,
    verify_car,
    verify_clifford,
)


@click.command("car")
@click.option("--modes", type=int, required=True, help="Number of fermionic modes m (dimension 2^m).")
@click.option("--tol", type=float, default=None, help="Max allowed deviation (default TOL_ALGEBRA).")
@click.option("--method", type=click.Choice(["clifford", "jordan-wigner"]), default="clifford", show_default=True)
@click.option("--export", "export_dir", type=click.Path(file_okay=False), default=None,
              help="Write a_i and a*_i as Matrix Market files into this directory.")
@click.pass_context
def car(ctx: click.Context, modes: int, tol: float | None, method: str, export_dir: str | None):
    """Build fermionic ladders and check the anticommutation relations."""
    cfg = with_params(ctx, subcommand="car", modes=modes, tol=tol, export=export_dir)
    ops = fermion_ladder_from_clifford(modes) if method == "clifford" else fermion_ladder_jordan_wigner(modes)
    report = verify_car(ops, cfg.tol)
    other = fermion_ladder_jordan_wigner(modes) if method == "clifford" else fermion_ladder_from_clifford(modes)
    report.add("clifford-vs-jordan-wigner", ladder_deviation(ops, other))
    named = {f"a_{i}": x for i, x in enumerate(ops.a)}
    named.update({f"a_dag_{i}": x for i, x in enumerate(ops.a_dag)})
    out = report.dump()
    out["exported"] = export_operators(named, cfg)
    emit(out, cfg)
    ctx.exit(0 if report.passed else 1)


@click.command("clifford")
@click.option("--n", "n", type=int, required=True, help="Even number of generators of Cl(n, C).")
@click.option("--tol", type=float, default=None)
@click.option("--export", "export_dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def clifford(ctx: click.Context, n: int, tol: float | None, export_dir: str | None):
    """Build Cl(n, C) generators and check e_i e_j + e_j e_i = 2 delta_ij."""
    cfg = with_params(ctx, subcommand="clifford", k=n, tol=tol, export=export_dir)
    gens = clifford_generators(n)
    report = verify_clifford(gens, cfg.tol)
    out = report.dump()
    out["exported"] = export_operators({f"e_{i}": e for i, e in enumerate(gens.mats)}, cfg)
    emit(out, cfg)
    ctx.exit(0 if report.passed else 1)
