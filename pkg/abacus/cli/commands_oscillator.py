# abacus/cli/commands_oscillator.py
from __future__ import annotations

import click

from abacus.deps import emit, get_run_config, with_params
from abacus.schemas.oscillator import DegeneracyTable
from abacus.services.oscillator.oscillator import OscillatorSpec, block_isomorphism_check, degeneracy_table


@click.group("oscillator")
def oscillator():
    """Two-mode oscillator levels and their match with Sy_n(H2)."""


@oscillator.command("table")
@click.option("--nmax", type=int, required=True)
@click.option("--omega", type=float, default=1.0, show_default=True)
@click.option("--hbar", type=float, default=1.0, show_default=True)
@click.pass_context
def table(ctx: click.Context, nmax: int, omega: float, hbar: float):
    """Energy levels with multiplicities; levels above nmax are flagged as truncated."""
    spec = OscillatorSpec(n_max=nmax, omega=omega, hbar=hbar)
    rows = degeneracy_table(spec)
    emit(DegeneracyTable(omega=omega, hbar=hbar, n_max=nmax, rows=rows), get_run_config(ctx))


@oscillator.command("block")
@click.option("--level", type=int, required=True)
@click.option("--nmax", type=int, required=True)
@click.option("--tol", type=float, default=None)
@click.pass_context
def block(ctx: click.Context, level: int, nmax: int, tol: float | None):
    """Compare the energy-level block of the two-mode ladders with sym_ladder(level)."""
    cfg = with_params(ctx, subcommand="oscillator", nmax=nmax, k=level, tol=tol)
    report = block_isomorphism_check(level, OscillatorSpec(n_max=nmax), cfg.tol)
    emit(report.dump(), cfg)
    ctx.exit(0 if report.passed else 1)
