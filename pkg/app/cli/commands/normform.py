"""
normform: recuento de polinomios que son normas desde F_q[t^(1/d)].
"""

import click

from app.cli.options import execute, run_options
from app.schemas.run import Mode


@click.command("normform")
@run_options
def normform(fmt: str, **values) -> None:
    """delta frente a testigos de norma, binomios g^d -+ t h^d y la cuenta cohomológica."""
    execute(Mode.NORMFORM, fmt, **values)
