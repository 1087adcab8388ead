"""
Stats engine: point counts, cohomological series, the fixed-n Grothendieck-Lefschetz check and
the norm-form census.

El lado cohomológico usa que Frobenius actúa sobre H^i por q^i:
    sum_f phi(sigma_f) = sum_i (-1)^i q^(n-i) <phi, H^i_n>
"""

import time
from fractions import Fraction
from typing import Optional

from app.algebra.cyclotomic import CycNum
from app.algebra.finite_field import FieldTable, field_for_q
from app.algebra.os_cohomology import graded_character, stable_inner_product
from app.algebra.polyspace import (
    binomial_witnesses,
    delta_indicator,
    enumerate_polyspace,
    frobenius_type,
    irreducible_sieve,
    norm_witness,
)
from app.algebra.statistic import Statistic, parse_statistic
from app.algebra.wreath_char import (
    ClassFunction,
    delta_class_function,
    inner_product,
    statistic_to_class_function,
)
from app.core.logging import get_logger
from app.core.settings import settings
from app.schemas.report import (
    CycNumOut,
    FieldInfo,
    GltRow,
    InnerProductRow,
    NormFormRow,
    PlateauValue,
    PointCountRow,
    Report,
    SeriesTerm,
    to_complex,
)
from app.schemas.run import RunConfig
from app.services.scan import TypeHistogram, type_histogram

logger = get_logger(__name__)

# Segundo orden de la serie usado en la comprobación de convergencia
SERIES_ORDER = 2


def _field_info(field: FieldTable) -> FieldInfo:
    return FieldInfo(q=field.q, p=field.p, f=field.f, generator=field.generator, modulus=list(field.modulus))


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def _out(value: CycNum) -> CycNumOut:
    return CycNumOut.from_cyc(value)


# --- Piezas reutilizables ---

def histogram_sum(histogram: TypeHistogram, phi) -> CycNum:
    """sum_f phi(sigma_f), agregado por tipo. phi acepta un LabeledCycleType."""
    total = CycNum.from_rational(0)
    for t, count in histogram.counts.items():
        value = phi(t)
        if value:
            total = total + value * count
    return total


def point_count_average(histogram: TypeHistogram, stat: Statistic, q: int, n: int) -> CycNum:
    """A_n = q^(-n) sum_f P(sigma_f)"""
    return histogram_sum(histogram, stat.evaluate) / Fraction(q) ** n


def cohomology_terms(phi: ClassFunction) -> list[CycNum]:
    """<phi, H^i_n> para i = 0..n."""
    character = graded_character(phi.n, phi.d)
    return [inner_product(phi, character.degree(i)) for i in range(phi.n + 1)]


def grothendieck_lefschetz_rhs(terms: list[CycNum], q: int, n: int) -> CycNum:
    total = CycNum.from_rational(0)
    for i, term in enumerate(terms):
        total = total + term * ((-1) ** i * q ** (n - i))
    return total


def series_partial_sums(values: list[CycNum], q: int) -> list[CycNum]:
    """S_k(q) = sum_(i <= k) (-1)^i q^(-i) <P, H^i>"""
    sums = []
    total = CycNum.from_rational(0)
    for i, value in enumerate(values):
        total = total + value * Fraction((-1) ** i, q ** i)
        sums.append(total)
    return sums


def _magnitude(value: CycNum) -> float:
    if value.is_rational():
        return abs(float(value.to_rational()))
    return abs(to_complex(value))


# --- Modos ---

def run_pointcount(cfg: RunConfig) -> Report:
    field = field_for_q(cfg.q)
    stat = parse_statistic(cfg.stat, cfg.d)
    report = Report(mode=cfg.mode.value, config=cfg.echo(), field=_field_info(field))

    series: Optional[CycNum] = None
    if cfg.imax is not None:
        stable = [stable_inner_product(stat, i, cfg.n_max).value for i in range(cfg.imax + 1)]
        series = series_partial_sums(stable, cfg.q)[-1]

    errors: list[tuple[int, float]] = []
    for n in cfg.ns:
        start = time.perf_counter()
        histogram = type_histogram(field, cfg.d, n, cfg.method.value, cfg.shards)
        value = point_count_average(histogram, stat, cfg.q, n)
        row = PointCountRow(n=n, exact_value=_out(value), poly_count=histogram.poly_count)
        if series is not None:
            gap = value - series
            row.series_error = _out(gap)
            errors.append((n, _magnitude(gap)))
        report.pointcount.append(row)
        report.timing[f"n={n}"] = _elapsed_ms(start)
        logger.debug("A_%d = %s (%d polinomios)", n, value, histogram.poly_count)

    if len(errors) >= 2:
        report.warnings.extend(convergence_warnings(errors, cfg.q))
    return report


def convergence_warnings(errors: list[tuple[int, float]], q: int) -> list[str]:
    """Tendencia (último error < primero) y tolerancia |A_n - S| < tol * q^-3; solo avisos."""
    warnings = []
    (n_first, first), (n_last, last) = errors[0], errors[-1]
    if not last < first:
        warnings.append(
            f"convergence trend: |A_{n_last} - S| = {last:.3e} is not below |A_{n_first} - S| = {first:.3e}"
        )
    bound = settings.convergence_tolerance * q ** -3
    if not last < bound:
        warnings.append(f"convergence tolerance: |A_{n_last} - S| = {last:.3e} >= {bound:.3e}")
    return warnings


def run_cohomology(cfg: RunConfig) -> Report:
    stat = parse_statistic(cfg.stat, cfg.d)
    imax = SERIES_ORDER if cfg.imax is None else cfg.imax
    report = Report(mode=cfg.mode.value, config=cfg.echo())

    start = time.perf_counter()
    values = []
    for i in range(imax + 1):
        stable = stable_inner_product(stat, i, cfg.n_max)
        values.append(stable.value)
        report.inner_products.append(
            InnerProductRow(
                i=i,
                value=_out(stable.value),
                onset=stable.onset,
                values=[PlateauValue(n=n, value=_out(v)) for n, v in stable.values],
            )
        )
        logger.debug("<%s, H^%d> = %s desde n = %d", stat, i, stable.value, stable.onset)
    for i, partial in enumerate(series_partial_sums(values, cfg.q)):
        report.series.append(SeriesTerm(i=i, partial_sum=_out(partial)))
    report.timing["total"] = _elapsed_ms(start)
    return report


def glt_class_function(cfg: RunConfig, n: int) -> ClassFunction:
    if cfg.is_delta:
        return delta_class_function(cfg.d, n)
    return statistic_to_class_function(parse_statistic(cfg.stat, cfg.d), n)


def verify_glt(cfg: RunConfig) -> Report:
    field = field_for_q(cfg.q)
    report = Report(mode=cfg.mode.value, config=cfg.echo(), field=_field_info(field))
    for n in cfg.ns:
        start = time.perf_counter()
        phi = glt_class_function(cfg, n)
        histogram = type_histogram(field, cfg.d, n, cfg.method.value, cfg.shards)
        lhs = histogram_sum(histogram, phi)
        terms = cohomology_terms(phi)
        rhs = grothendieck_lefschetz_rhs(terms, cfg.q, n)
        equal = lhs == rhs
        report.glt.append(
            GltRow(n=n, phi=cfg.stat, lhs=_out(lhs), rhs=_out(rhs), terms=[_out(t) for t in terms], equal=equal)
        )
        report.verdicts[f"glt n={n}"] = equal
        report.timing[f"n={n}"] = _elapsed_ms(start)
        if not equal:
            logger.debug("GLT distinto en n=%d: %s != %s", n, lhs, rhs)
    return report


def run_normform(cfg: RunConfig) -> Report:
    field = field_for_q(cfg.q)
    d = cfg.d
    report = Report(mode=cfg.mode.value, config=cfg.echo(), field=_field_info(field))
    for n in cfg.ns:
        start = time.perf_counter()
        sieve = irreducible_sieve(field.p, field.f, n // 2)
        delta_count = norm_count = minus_count = plus_count = 0
        for f in enumerate_polyspace(field, n):
            delta_count += delta_indicator(frobenius_type(f, d, field, sieve))
            norm_count += norm_witness(f, d, field) is not None
            witnesses = binomial_witnesses(f, d, field)
            minus_count += witnesses[-1] is not None
            plus_count += witnesses[1] is not None

        terms = cohomology_terms(delta_class_function(d, n))
        cohomological = grothendieck_lefschetz_rhs(terms, cfg.q, n)
        signs = [s for s, c in (("-", minus_count), ("+", plus_count)) if c == delta_count]
        equal = cohomological == delta_count and norm_count == delta_count
        report.normform.append(
            NormFormRow(
                n=n,
                delta_count=delta_count,
                norm_count=norm_count,
                binomial_minus_count=minus_count,
                binomial_plus_count=plus_count,
                cohomological_count=_out(cohomological),
                matching_signs=signs,
                equal=equal,
            )
        )
        report.verdicts[f"normform n={n}"] = equal
        report.timing[f"n={n}"] = _elapsed_ms(start)
    return report


RUNNERS = {
    "pointcount": run_pointcount,
    "cohomology": run_cohomology,
    "verify-glt": verify_glt,
    "normform": run_normform,
}


def run(cfg: RunConfig) -> Report:
    return RUNNERS[cfg.mode.value](cfg)
