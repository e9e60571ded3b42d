# abacus/main.py
from __future__ import annotations

import logging
import sys
from typing import Sequence

import click
from pydantic import ValidationError

from abacus.cli import (
    commands_car,
    commands_ccr,
    commands_oscillator,
    commands_stellar,
    commands_sym,
    commands_tape,
    commands_verify,
)
from abacus.core.config import settings
from abacus.core.errors import AbacusError
from abacus.deps import configure_logging, validation_message
from abacus.schemas.run import RunConfig

logger = logging.getLogger(__name__)


class AbacusGroup(click.Group):
    """Maps domain errors to exit status 2 with the error on stderr."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except AbacusError as e:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {e}", err=True)
            ctx.exit(e.exit_code)
        except ValidationError as e:
            click.echo(f"error: invalid-argument: {validation_message(e)}", err=True)
            ctx.exit(2)


@click.group(cls=AbacusGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["json", "plain", "matrix-market"]), default="json",
              show_default=True, help="Output format; matrix-market also needs --export DIR on the command.")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Stderr log level (default LOG_LEVEL from the environment).")
@click.option("--seed", type=int, default=None, help="Seed for randomized checks (default DEFAULT_SEED).")
@click.pass_context
def cli(ctx: click.Context, fmt: str, log_level: str | None, seed: int | None):
    """CAR/CCR representations, symmetric qubit powers and graded tapes."""
    configure_logging(log_level or settings.LOG_LEVEL)
    try:
        settings.validate_at_startup()
    except RuntimeError as e:
        raise click.UsageError(str(e))
    ctx.obj = RunConfig(format=fmt, seed=settings.DEFAULT_SEED if seed is None else seed)
    logger.debug("%s [%s] format=%s seed=%d", settings.APP_NAME, settings.APP_ENV, fmt, ctx.obj.seed)


# Commands
cli.add_command(commands_car.car)
cli.add_command(commands_car.clifford)
cli.add_command(commands_ccr.ccr)
cli.add_command(commands_sym.sym)
cli.add_command(commands_stellar.stellar)
cli.add_command(commands_tape.tape)
cli.add_command(commands_oscillator.oscillator)
cli.add_command(commands_verify.verify_all)


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command line and return its exit status instead of leaving the process."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="abacus")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0


def main() -> None:
    sys.exit(run())
