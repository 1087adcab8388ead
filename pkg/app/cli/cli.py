"""
CLI group.
Agrupa los subcomandos: un módulo por modo en app/cli/commands.
"""

import click

from app.cli.commands import cohomology, normform, pointcount, verify
from app.core.logging import get_logger, setup_logging
from app.core.settings import settings

logger = get_logger("app.cli")


@click.group()
@click.option("--debug", is_flag=True, default=False, help="Logs a nivel DEBUG.")
def cli(debug: bool) -> None:
    """Estadísticas aritméticas sobre Poly_n(F_q^*) y su cohomología."""
    setup_logging("DEBUG" if debug else None)
    logger.debug("entorno %s, progreso %s", settings.environment, settings.progress_enabled)


cli.add_command(pointcount.pointcount)
cli.add_command(cohomology.cohomology)
cli.add_command(verify.verify_glt)
cli.add_command(normform.normform)
