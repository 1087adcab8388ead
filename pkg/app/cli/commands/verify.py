"""
verify-glt: igualdad exacta de Grothendieck-Lefschetz en n fijo.
"""

import click

from app.cli.options import execute, run_options
from app.schemas.run import Mode


@click.command("verify-glt")
@run_options
def verify_glt(fmt: str, **values) -> None:
    """Compara la suma sobre polinomios con la suma cohomológica (--stat delta admitido)."""
    execute(Mode.VERIFY_GLT, fmt, **values)
