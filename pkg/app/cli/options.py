"""
Shared CLI options.
Cada subcomando declara las mismas banderas y delega en `execute`, que traduce errores a
códigos de salida y escribe el informe.
"""

import sys
from pathlib import Path
from typing import Callable, Optional

import click

from app.core.errors import EXIT_VERDICT_FAILED, OrbitCountError
from app.core.logging import get_logger
from app.schemas.report import Report
from app.schemas.run import Mode, OutputFormat, ScanMethod, load_run_config
from app.services.stats_engine import run

logger = get_logger("app.cli")


def run_options(func: Callable) -> Callable:
    options = [
        click.option("--q", "q", type=int, required=True, help="Tamaño del cuerpo (potencia de primo)."),
        click.option("--d", "d", type=int, default=1, show_default=True, help="Orden del grupo cíclico, d | q-1."),
        click.option("--n", "n", type=int, default=None, help="Grado fijo."),
        click.option("--n-range", "n_range", default=None, help='Rango de grados "A..B".'),
        click.option("--stat", "stat", default="1", show_default=True, help="Polinomio de carácter."),
        click.option("--imax", "imax", type=int, default=None, help="Último grado cohomológico."),
        click.option("--n-max", "n_max", type=int, default=None, help="Tope de n para la meseta."),
        click.option("--shards", "shards", type=int, default=None, help="Número de shards del escaneo."),
        click.option(
            "--method",
            "method",
            type=click.Choice([m.value for m in ScanMethod]),
            default=ScanMethod.SCAN.value,
            show_default=True,
        ),
        click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), default=None),
        click.option(
            "--format",
            "fmt",
            type=click.Choice([f.value for f in OutputFormat]),
            default=OutputFormat.JSON.value,
            show_default=True,
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def render(report: Report, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.CSV:
        return report.to_csv()
    return report.to_json() + "\n"


def execute(mode: Mode, fmt: str, **values) -> None:
    """Valida, ejecuta y emite. Sale con 0 solo si todos los veredictos pasan."""
    try:
        cfg = load_run_config(mode=mode, format=fmt, **values)
        logger.info("🚀 %s q=%d d=%d n=%s", mode.value, cfg.q, cfg.d, cfg.ns or "-")
        report = run(cfg)
    except OrbitCountError as e:
        logger.error("❌ %s", e.detail)
        sys.exit(e.exit_code)

    text = render(report, cfg.format)
    _write(text, cfg.out)

    for warning in report.warnings:
        logger.warning("⚠️ %s", warning)
    if not report.passed:
        failed = [name for name, ok in report.verdicts.items() if not ok]
        logger.error("❌ veredictos fallidos: %s", ", ".join(failed))
        sys.exit(EXIT_VERDICT_FAILED)
    logger.info("✅ %s completado", mode.value)


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("💾 informe escrito en %s", out)
