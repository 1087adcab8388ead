"""
Pydantic schemas for run configuration.
Valida q, d, n y el rango de n antes de tocar ningún cálculo.
"""

import re
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from sympy import factorint

from app.core.errors import ConfigError
from app.core.settings import settings


class Mode(str, Enum):
    POINTCOUNT = "pointcount"
    COHOMOLOGY = "cohomology"
    VERIFY_GLT = "verify-glt"
    NORMFORM = "normform"


class ScanMethod(str, Enum):
    SCAN = "scan"
    CENSUS = "census"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")

# Estadístico especial de verify-glt: la función de clase delta_n
DELTA = "delta"


class RunConfig(BaseModel):
    mode: Mode
    q: int = Field(..., ge=2, description="Tamaño del cuerpo, potencia de primo")
    d: int = Field(default=1, ge=1, description="Orden de G = Z/dZ, d | q - 1")
    n: Optional[int] = Field(default=None, ge=1)
    n_range: Optional[str] = Field(default=None, description='Rango "A..B"')
    stat: str = Field(default="1", description="Polinomio de carácter o 'delta'")
    imax: Optional[int] = Field(default=None, ge=0)
    n_max: Optional[int] = Field(default=None, ge=1)
    shards: int = Field(default_factory=lambda: settings.default_shards, ge=1)
    method: ScanMethod = ScanMethod.SCAN
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: int) -> int:
        if len(factorint(v)) != 1:
            raise ValueError(f"q = {v} no es potencia de primo")
        return v

    @field_validator("n_range")
    @classmethod
    def validate_n_range(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        match = _RANGE.match(v)
        if not match:
            raise ValueError('n-range debe tener la forma "A..B"')
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo < 1 or lo > hi:
            raise ValueError(f"rango de n inválido: {v}")
        return f"{lo}..{hi}"

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        if (self.q - 1) % self.d:
            raise ValueError(f"d = {self.d} no divide q - 1 = {self.q - 1}")
        if self.n is not None and self.n_range is not None:
            raise ValueError("usa --n o --n-range, no ambos")
        if self.mode != Mode.COHOMOLOGY and self.n is None and self.n_range is None:
            raise ValueError(f"el modo {self.mode.value} necesita --n o --n-range")
        if self.stat.strip() == DELTA and self.mode != Mode.VERIFY_GLT:
            raise ValueError("'delta' solo es válido en verify-glt")
        return self

    @property
    def ns(self) -> list[int]:
        if self.n is not None:
            return [self.n]
        if self.n_range is not None:
            lo, hi = (int(x) for x in self.n_range.split(".."))
            return list(range(lo, hi + 1))
        return []

    @property
    def is_delta(self) -> bool:
        return self.stat.strip() == DELTA

    def echo(self) -> dict:
        """Configuración que determina el resultado (sin salida ni número de shards)."""
        return self.model_dump(mode="json", exclude={"out", "format", "shards"})


def load_run_config(**values) -> RunConfig:
    """Construye un RunConfig; los errores de validación salen como ConfigError."""
    try:
        return RunConfig(**{k: v for k, v in values.items() if v is not None})
    except ValidationError as e:
        messages = "; ".join(
            f"{'.'.join(str(x) for x in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(messages) from e
