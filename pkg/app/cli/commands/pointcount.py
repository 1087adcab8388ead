"""
pointcount: A_n(q) = q^(-n) sum_f P(sigma_f) para cada n del rango.
"""

import click

from app.cli.options import execute, run_options
from app.schemas.run import Mode


@click.command("pointcount")
@run_options
def pointcount(fmt: str, **values) -> None:
    """Promedio exacto del estadístico sobre Poly_n(F_q^*)."""
    execute(Mode.POINTCOUNT, fmt, **values)
