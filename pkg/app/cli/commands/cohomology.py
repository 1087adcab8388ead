"""
cohomology: valores estables <P, H^i> y sumas parciales de la serie.
"""

import click

from app.cli.options import execute, run_options
from app.schemas.run import Mode


@click.command("cohomology")
@run_options
def cohomology(fmt: str, **values) -> None:
    """Productos internos estables para i = 0..imax."""
    execute(Mode.COHOMOLOGY, fmt, **values)
