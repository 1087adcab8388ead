"""
Sharded scan of Poly_n(F_q^*).

El escaneo sube de grado en grado. En el grado k cada shard multiplica los irreducibles de grado
< k (multiconjuntos con índices no crecientes) y marca los códigos de los mónicos reducibles que
obtiene; los irreducibles de grado k son el complemento. En el grado n los productos squarefree se
cuentan además por tipo. Cada shard es una función pura de sus argumentos y los resultados se
combinan en orden de índice de shard.
"""

from collections import Counter
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import NamedTuple, Optional

from tqdm import tqdm

from app.algebra.finite_field import FieldTable, build_field, monic_from_code, norm_label
from app.algebra.polyspace import (
    LabeledCycleType,
    census_type_histogram,
    irreducible_codes,
    irreducibles_from_codes,
    merge_bitmaps,
    reducible_products,
    types_from_paths,
)
from app.core.errors import PolyspaceError
from app.core.logging import get_logger
from app.core.settings import settings

logger = get_logger(__name__)

CodesByDegree = tuple[tuple[int, ...], ...]


class TypeHistogram(NamedTuple):
    counts: dict[LabeledCycleType, int]
    poly_count: int


def scan_shard(
    p: int, f: int, d: int, k: int, codes: CodesByDegree, shard: int, shards: int, typed: bool
) -> tuple[bytes, dict]:
    field = build_field(p, f)
    irreducibles = irreducibles_from_codes(codes, d, field)
    seen, paths = reducible_products(field, k, irreducibles, shard, shards, typed)
    return bytes(seen), dict(paths)


def _run_level(
    executor: Optional[Executor], field: FieldTable, d: int, k: int, codes: CodesByDegree, shards: int, typed: bool
) -> list[tuple[bytes, dict]]:
    args = [(field.p, field.f, d, k, codes, shard, shards, typed) for shard in range(shards)]
    if executor is None:
        return [scan_shard(*a) for a in args]
    futures = [executor.submit(scan_shard, *a) for a in args]
    # orden de índice, no de llegada
    return [future.result() for future in futures]


def _merge(field: FieldTable, d: int, n: int, parts: list[dict], top_codes: list[int]) -> TypeHistogram:
    paths: Counter = Counter()
    for part in parts:
        paths.update(part)
    merged = types_from_paths(d, paths)
    for code in top_codes:
        label = norm_label(monic_from_code(code, n, field.q), d, field)
        merged[LabeledCycleType(d, ((n, label, 1),))] += 1
    counts = dict(sorted(merged.items()))
    return TypeHistogram(counts, sum(counts.values()))


def scan_type_histogram(
    field: FieldTable, d: int, n: int, shards: int = 1, max_workers: Optional[int] = None
) -> TypeHistogram:
    """Histograma exhaustivo de tipos sobre Poly_n(F_q^*)."""
    if n < 1:
        raise PolyspaceError("n must be >= 1")
    progress = settings.progress_enabled
    workers = min(max_workers or settings.max_workers, shards)
    executor = ProcessPoolExecutor(max_workers=workers) if shards > 1 else None
    if executor is not None:
        logger.debug("escaneo F_%d n=%d en %d shards con %d procesos", field.q, n, shards, workers)
    codes: list[tuple[int, ...]] = []
    try:
        for k in tqdm(range(1, n + 1), desc=f"F_{field.q} n={n}", disable=not progress, leave=False):
            parts = _run_level(executor, field, d, k, tuple(codes), shards, typed=k == n)
            top = irreducible_codes(merge_bitmaps([seen for seen, _ in parts]), field.q)
            logger.debug("F_%d grado %d: %d irreducibles", field.q, k, len(top))
            codes.append(tuple(top))
    finally:
        if executor is not None:
            executor.shutdown()
    return _merge(field, d, n, [paths for _, paths in parts], list(codes[-1]))


def type_histogram(field: FieldTable, d: int, n: int, method: str = "scan", shards: int = 1) -> TypeHistogram:
    if method == "census":
        counts = census_type_histogram(field.q, d, n)
        return TypeHistogram(counts, sum(counts.values()))
    return scan_type_histogram(field, d, n, shards)
