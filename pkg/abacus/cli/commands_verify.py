# abacus/cli/commands_verify.py
from __future__ import annotations

import click

from abacus.deps import emit, with_params
from abacus.services.verify import run_all


@click.command("verify-all")
@click.option("--seed", type=int, default=None, help="Seed for the randomized checks (default: the global --seed).")
@click.pass_context
def verify_all(ctx: click.Context, seed: int | None):
    """Run every verification suite; exit 1 if any check fails."""
    cfg = with_params(ctx, subcommand="verify-all", seed=seed)
    summary = run_all(cfg.seed)
    emit(summary.dump(), cfg)
    ctx.exit(0 if summary.passed else 1)
