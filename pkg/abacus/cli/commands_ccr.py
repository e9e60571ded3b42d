# abacus/cli/commands_ccr.py
from __future__ import annotations

import click

from abacus.deps import emit, export_operators, with_params
from abacus.services.operators.fock_ccr import FockCutoff, boson_ladder, verify_ccr


@click.command("ccr")
@click.option("--modes", type=int, required=True, help="Number of bosonic modes m.")
@click.option("--nmax", type=int, required=True, help="Per-mode occupation cutoff.")
@click.option("--tol", type=float, default=None)
@click.option("--export", "export_dir", type=click.Path(file_okay=False), default=None,
              help="Write c_i and c*_i as Matrix Market files into this directory.")
@click.pass_context
def ccr(ctx: click.Context, modes: int, nmax: int, tol: float | None, export_dir: str | None):
    """Truncated bosonic ladders: commutators on the interior block and the boundary defect."""
    cfg = with_params(ctx, subcommand="ccr", modes=modes, nmax=nmax, tol=tol, export=export_dir)
    ops = boson_ladder(FockCutoff(modes=modes, n_max=nmax))
    report = verify_ccr(ops, cfg.tol)
    named = {f"c_{i}": x for i, x in enumerate(ops.c)}
    named.update({f"c_dag_{i}": x for i, x in enumerate(ops.c_dag)})
    out = report.dump()
    out["exported"] = export_operators(named, cfg)
    emit(out, cfg)
    ctx.exit(0 if report.passed else 1)
