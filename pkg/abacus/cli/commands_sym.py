# abacus/cli/commands_sym.py
from __future__ import annotations

import click

from abacus.deps import emit, export_operators, with_params
from abacus.services.symmetric.sym_space import embed_sym, sym_ladder, symmetrizer, verify_sym_space


@click.command("sym")
@click.option("--grade", type=int, required=True, help="Top grade k of Sy_k(H2) to check (1..k).")
@click.option("--tol", type=float, default=None)
@click.option("--su2-pairs", type=int, default=50, show_default=True, help="Random unitary pairs per grade.")
@click.option("--export", "export_dir", type=click.Path(file_okay=False), default=None,
              help="Write the grade-k symmetrizer, embedding and ladders as Matrix Market files "
                   "(the symmetrizer has C(2k,k) nonzeros: k <= 11 at the default NNZ_BUDGET).")
@click.pass_context
def sym(ctx: click.Context, grade: int, tol: float | None, su2_pairs: int, export_dir: str | None):
    """Symmetrizer, embedding, SU(2) action and ladders for grades 1..k."""
    cfg = with_params(ctx, subcommand="sym", grade=grade, tol=tol, export=export_dir)
    if grade < 1:
        raise click.BadParameter("grade must be >= 1", param_hint="--grade")
    report = verify_sym_space(k_max=grade, seed=cfg.seed, tol=cfg.tol, su2_grade_max=min(grade, 8),
                              su2_pairs=su2_pairs)
    out = report.dump()
    named = {}
    if cfg.export:
        ladder = sym_ladder(grade)
        named = {"symmetrizer": symmetrizer(grade), "embed": embed_sym(grade), "c0": ladder.c0,
                 "c1": ladder.c1, "c0_dag": ladder.c0_dag, "c1_dag": ladder.c1_dag}
    out["exported"] = export_operators(named, cfg)
    emit(out, cfg)
    ctx.exit(0 if report.passed else 1)
