# abacus/deps.py
"""Shared option parsing and output rendering for the CLI commands."""
from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Iterable, List, Type, TypeVar

import click
import numpy as np
import orjson
from pydantic import BaseModel, ValidationError

from abacus.core.config import settings
from abacus.schemas.run import RunConfig
from abacus.services.operators.sparse import SparseComplexOperator, export_matrix_market

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)

_JSON_OPTS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE


def configure_logging(level: str) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def get_run_config(ctx: click.Context) -> RunConfig:
    obj = ctx.find_object(RunConfig)
    return obj if obj is not None else RunConfig(seed=settings.DEFAULT_SEED)


def parse_complex(text: str) -> complex:
    """Accepts 1, -2.5, 1+2j, 1-0.5i."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise click.BadParameter(f"not a number: {text!r}")


def parse_coeffs(text: str) -> np.ndarray:
    """Comma-separated a_k..a_0 (highest power of xi first)."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise click.BadParameter("at least one coefficient is required")
    return np.array([parse_complex(p) for p in parts], dtype=np.complex128)


def parse_direction(text: str) -> List[complex]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise click.BadParameter(f"direction needs two components, got {len(parts)}")
    return [parse_complex(p) for p in parts]


def parse_gate(name: str) -> np.ndarray:
    gates = {
        "x": [[0, 1], [1, 0]],
        "y": [[0, -1j], [1j, 0]],
        "z": [[1, 0], [0, -1]],
        "h": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
        "id": [[1, 0], [0, 1]],
        "swap": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        "cnot": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    }
    if name.lower() not in gates:
        raise click.BadParameter(f"unknown gate {name!r}; choose from {', '.join(sorted(gates))}")
    return np.asarray(gates[name.lower()], dtype=np.complex128)


def read_payload(stream, model: Type[M]) -> M:
    """Parse a JSON document from an open binary stream into a schema model."""
    raw = stream.read()
    try:
        return model.model_validate(orjson.loads(raw))
    except orjson.JSONDecodeError as e:
        raise click.BadParameter(f"invalid JSON: {e}")


def to_jsonable(data: Any) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    if isinstance(data, (list, tuple)):
        return [to_jsonable(x) for x in data]
    if isinstance(data, dict):
        return {k: to_jsonable(v) for k, v in data.items()}
    return data


def render_json(data: Any) -> bytes:
    return orjson.dumps(to_jsonable(data), option=_JSON_OPTS)


def _plain_lines(data: Any, prefix: str = "") -> Iterable[str]:
    if isinstance(data, dict):
        for key in sorted(data):
            yield from _plain_lines(data[key], f"{prefix}{key}.")
    elif isinstance(data, list):
        for i, item in enumerate(data):
            yield from _plain_lines(item, f"{prefix}{i}.")
    else:
        yield f"{prefix.rstrip('.')}\t{data}"


def emit(data: Any, cfg: RunConfig) -> None:
    """Write machine-readable output to stdout in the selected format."""
    if cfg.format == "matrix-market" and not cfg.export:
        raise click.UsageError("--format matrix-market requires --export DIR")
    if cfg.format == "plain":
        for line in _plain_lines(to_jsonable(data)):
            click.echo(line)
        return
    click.echo(render_json(data), nl=False)


def export_operators(ops: dict[str, SparseComplexOperator], cfg: RunConfig) -> List[str]:
    """Matrix Market files <name>.mtx in the export directory; returns the written paths."""
    if not cfg.export:
        if cfg.format == "matrix-market":
            raise click.UsageError("--format matrix-market requires --export DIR")
        return []
    target = Path(cfg.export)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, op in ops.items():
        path = target / f"{name}.mtx"
        export_matrix_market(op, str(path), name)
        written.append(str(path))
    logger.info("exported %d operators to %s", len(written), target)
    return written


def validation_message(e: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(x) for x in err['loc']) or 'value'}: {err['msg']}" for err in e.errors())


def with_params(ctx: click.Context, **params: Any) -> RunConfig:
    """The group's RunConfig updated with a command's own options, re-validated."""
    cfg = get_run_config(ctx)
    updates = {k: v for k, v in params.items() if v is not None}
    return RunConfig.model_validate({**cfg.model_dump(), **updates})
