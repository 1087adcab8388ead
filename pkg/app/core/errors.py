"""
Error hierarchy for OrbitCount.
Cada error lleva un `detail` legible y un `exit_code` para la CLI,
igual que HTTPException lleva status_code y detail en una API.
"""

from typing import Optional


EXIT_VERDICT_FAILED = 1
EXIT_CONFIG = 2
EXIT_MATH = 3


class OrbitCountError(Exception):
    exit_code: int = EXIT_MATH

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __repr__(self) -> str:
        return f"<{type(self).__name__}(detail='{self.detail}')>"


class CyclotomicError(OrbitCountError):
    """Aritmética en Q(zeta_m): división por cero, valor no racional."""


class FieldError(OrbitCountError):
    """Construcción de F_q y cálculo de etiquetas."""


class PolyspaceError(OrbitCountError):
    """Factorización y búsqueda de testigos de forma norma."""


class StatisticError(OrbitCountError):
    """Estadísticos mal formados o evaluados sobre otro módulo d."""


class StatisticSyntaxError(StatisticError):
    def __init__(self, detail: str, offset: int):
        super().__init__(f"syntax error at byte {offset}: {detail}")
        self.offset = offset


class CohomologyError(OrbitCountError):
    """Presupuesto excedido, meseta no encontrada o dimensiones no enteras."""


class ConfigError(OrbitCountError):
    exit_code = EXIT_CONFIG
