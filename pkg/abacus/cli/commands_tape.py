# abacus/cli/commands_tape.py
from __future__ import annotations

import click

from abacus.deps import emit, get_run_config, parse_gate, read_payload
from abacus.schemas.tape import AbacusPayload, TapePayload
from abacus.services.tape.graded_tape import append_blank, apply_gate, graded_inner, new_tape, symmetrize_tape

TAPE_FILE = click.File("rb")


@click.group("tape")
def tape():
    """Graded tape states: variable numbers of qubit cells."""


@tape.command("new")
@click.option("--K", "K", type=int, required=True, help="Maximum grade.")
@click.option("--bits", default="", help="Cell values from the start of the tape, e.g. 0110; empty for the scalar 1.")
@click.pass_context
def new(ctx: click.Context, K: int, bits: str):
    emit(TapePayload.from_tape(new_tape(K, bits)), get_run_config(ctx))


@tape.command("append")
@click.argument("state", type=TAPE_FILE)
@click.pass_context
def append(ctx: click.Context, state):
    """Append a blank |0> cell to every grade."""
    psi = read_payload(state, TapePayload).to_tape()
    emit(TapePayload.from_tape(append_blank(psi)), get_run_config(ctx))


@tape.command("gate")
@click.argument("state", type=TAPE_FILE)
@click.option("--gate", "gate_name", required=True, help="x, y, z, h, id, swap or cnot.")
@click.option("--position", type=int, default=0, show_default=True, help="First cell the gate acts on.")
@click.option("--strict/--skip-short", default=None, help="Fail on grades shorter than the gate window.")
@click.pass_context
def gate(ctx: click.Context, state, gate_name: str, position: int, strict: bool | None):
    psi = read_payload(state, TapePayload).to_tape()
    emit(TapePayload.from_tape(apply_gate(psi, parse_gate(gate_name), position, strict)), get_run_config(ctx))


@tape.command("inner")
@click.argument("left", type=TAPE_FILE)
@click.argument("right", type=TAPE_FILE)
@click.pass_context
def inner(ctx: click.Context, left, right):
    """<left, right>, summed over grades."""
    value = graded_inner(read_payload(left, TapePayload).to_tape(), read_payload(right, TapePayload).to_tape())
    emit({"re": value.real, "im": value.imag}, get_run_config(ctx))


@tape.command("symmetrize")
@click.argument("state", type=TAPE_FILE)
@click.pass_context
def symmetrize(ctx: click.Context, state):
    """Abacus coordinates (e~ basis) of the symmetric part of every grade."""
    psi = read_payload(state, TapePayload).to_tape()
    emit(AbacusPayload.from_abacus(symmetrize_tape(psi)), get_run_config(ctx))
