"""
Logging setup.
Un único punto de configuración; los módulos piden su logger con get_logger(__name__).
"""

import logging

from app.core.settings import settings

_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
_configured = False


def setup_logging(level: str | None = None) -> None:
    global _configured
    if _configured:
        return
    logging.basicConfig(level=level or settings.log_level, format=_FORMAT)
    _configured = True


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
