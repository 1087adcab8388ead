"""
Pydantic schemas for reports.
Los valores exactos viajan como cadenas ("a/b" y vectores de coeficientes ciclotómicos);
la aproximación decimal es solo informativa y nunca interviene en un veredicto.
"""

import cmath
import csv
import io
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.algebra.cyclotomic import CycNum
from app.core.settings import settings


def to_complex(value: CycNum) -> complex:
    m = value.order
    return sum((float(c) * cmath.exp(2j * cmath.pi * k / m) for k, c in enumerate(value.coeffs) if c), 0j)


def approx(value: CycNum, digits: int = 12) -> str:
    z = to_complex(value)
    re_part = round(z.real, digits) + 0.0
    im_part = round(z.imag, digits) + 0.0
    if im_part == 0:
        return f"{re_part:.{digits}g}"
    return f"{re_part:.{digits}g}{im_part:+.{digits}g}i"


class CycNumOut(BaseModel):
    order: int
    coeffs: list[str]
    approx: str

    @classmethod
    def from_cyc(cls, value: CycNum) -> "CycNumOut":
        return cls(order=value.order, coeffs=[str(c) for c in value.coeffs], approx=approx(value))


class FieldInfo(BaseModel):
    q: int
    p: int
    f: int
    generator: int
    modulus: list[int]


class PointCountRow(BaseModel):
    n: int
    exact_value: CycNumOut
    poly_count: int
    series_error: Optional[CycNumOut] = None


class PlateauValue(BaseModel):
    n: int
    value: CycNumOut


class InnerProductRow(BaseModel):
    i: int
    value: CycNumOut
    onset: int
    values: list[PlateauValue]


class SeriesTerm(BaseModel):
    i: int
    partial_sum: CycNumOut


class GltRow(BaseModel):
    n: int
    phi: str
    lhs: CycNumOut
    rhs: CycNumOut
    terms: list[CycNumOut] = Field(description="<phi, H^i> para i = 0..n")
    equal: bool


class NormFormRow(BaseModel):
    n: int
    delta_count: int
    norm_count: int
    binomial_minus_count: int
    binomial_plus_count: int
    cohomological_count: CycNumOut
    matching_signs: list[str]
    equal: bool


class Report(BaseModel):
    schema_version: int = Field(default_factory=lambda: settings.report_schema, serialization_alias="schema")
    mode: str
    config: dict
    field: Optional[FieldInfo] = None
    pointcount: list[PointCountRow] = Field(default_factory=list)
    inner_products: list[InnerProductRow] = Field(default_factory=list)
    series: list[SeriesTerm] = Field(default_factory=list)
    glt: list[GltRow] = Field(default_factory=list)
    normform: list[NormFormRow] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)
    verdicts: dict[str, bool] = Field(default_factory=dict)
    # milisegundos por n (clave "n=..") y total; fuera del payload reproducible
    timing: dict[str, float] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def payload(self) -> dict:
        """Contenido reproducible bit a bit: todo menos los tiempos."""
        return self.model_dump(mode="json", by_alias=True, exclude={"timing"})

    def to_json(self, include_timing: bool = True) -> str:
        exclude = None if include_timing else {"timing"}
        return self.model_dump_json(indent=2, by_alias=True, exclude=exclude)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if self.pointcount:
            writer.writerow(["n", "exact_value", "approx", "poly_count", "wall_ms"])
            for row in self.pointcount:
                writer.writerow([
                    row.n,
                    _exact_from_out(row.exact_value),
                    row.exact_value.approx,
                    row.poly_count,
                    f"{self.timing.get(f'n={row.n}', 0.0):.3f}",
                ])
        elif self.inner_products:
            writer.writerow(["i", "exact_value", "approx", "onset"])
            for row in self.inner_products:
                writer.writerow([row.i, _exact_from_out(row.value), row.value.approx, row.onset])
        elif self.glt:
            writer.writerow(["n", "phi", "lhs", "rhs", "equal"])
            for row in self.glt:
                writer.writerow([row.n, row.phi, _exact_from_out(row.lhs), _exact_from_out(row.rhs), row.equal])
        elif self.normform:
            writer.writerow([
                "n", "delta_count", "norm_count", "binomial_minus_count", "binomial_plus_count",
                "cohomological_count", "matching_signs", "equal",
            ])
            for row in self.normform:
                writer.writerow([
                    row.n, row.delta_count, row.norm_count, row.binomial_minus_count,
                    row.binomial_plus_count, _exact_from_out(row.cohomological_count),
                    " ".join(row.matching_signs), row.equal,
                ])
        return buffer.getvalue()


def _exact_from_out(out: CycNumOut) -> str:
    if all(c == "0" for c in out.coeffs[1:]):
        return out.coeffs[0]
    return "[" + ", ".join(out.coeffs) + f"] mod Phi_{out.order}"
