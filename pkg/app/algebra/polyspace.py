"""
Poly_n(F_q^*): enumeración por shards, factorización, tipo de ciclo etiquetado de Frobenius,
indicador delta_n y testigos de forma norma.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from sympy import divisors

from app.algebra.finite_field import (
    ONE,
    FieldTable,
    PolyFq,
    all_polys,
    build_field,
    monic_polys,
    poly_derivative,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_pow,
    poly_shift,
    poly_add,
    poly_sub,
    monic_code,
    monic_from_code,
    norm_label,
)
from app.core.errors import PolyspaceError
from app.core.settings import settings
from app.core.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class LabeledCycleType:
    """
    Clase de conjugación de W_n = (Z/dZ)^n x| S_n.
    `parts` es una tupla ordenada de (longitud i, etiqueta c, multiplicidad m), m >= 1.
    """

    d: int
    parts: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[tuple[int, int]]) -> "LabeledCycleType":
        counts = Counter((i, c % d) for i, c in cycles)
        return cls(d, tuple(sorted((i, c, m) for (i, c), m in counts.items())))

    @property
    def n(self) -> int:
        return sum(i * m for i, _, m in self.parts)

    def multiplicity(self, i: int, c: int) -> int:
        c %= self.d
        for pi, pc, m in self.parts:
            if pi == i and pc == c:
                return m
        return 0

    def cycles(self) -> Iterator[tuple[int, int]]:
        """Cada ciclo (i, c) repetido según su multiplicidad, en orden canónico."""
        for i, c, m in self.parts:
            for _ in range(m):
                yield i, c

    def with_fixed_points(self, a: int) -> "LabeledCycleType":
        """Añade a puntos fijos con etiqueta 0 (inclusión W_{n-a} -> W_n)."""
        return LabeledCycleType.from_cycles(self.d, list(self.cycles()) + [(1, 0)] * a)

    def __str__(self) -> str:
        body = ", ".join(
            f"({i},{c})" + (f"^{m}" if m > 1 else "") for i, c, m in self.parts
        )
        return "{" + body + "}"


# --- Enumeración ---

def _block_depth(q: int, n: int, shards: int) -> int:
    k = 0
    while q ** k < shards and k < n:
        k += 1
    return k


def enumerate_polyspace(
    field: FieldTable, n: int, shard: int = 0, shards: int = 1
) -> Iterator[PolyFq]:
    """
    Mónicos de grado n, squarefree, con f(0) != 0.
    Los k coeficientes superiores forman un bloque b (c_{n-1} más significativo); el shard s
    recibe los bloques con b % shards == s. Dentro de cada bloque el orden es lexicográfico.
    """
    if n < 1:
        raise PolyspaceError("n must be >= 1")
    if not 0 <= shard < shards:
        raise PolyspaceError(f"shard {shard} out of range for {shards} shards")
    q = field.q
    k = _block_depth(q, n, shards)
    for block in range(shard, q ** k, shards):
        top = []
        b = block
        for _ in range(k):
            b, r = divmod(b, q)
            top.append(r)
        # top está en orden c_{n-k}..c_{n-1}
        for rest in product(range(q), repeat=n - k):
            coeffs = rest[::-1] + tuple(top) + (1,)
            if coeffs[0] == 0:
                continue
            f = PolyFq(coeffs)
            if poly_gcd(f, poly_derivative(f, field), field) == ONE:
                yield f


def polyspace_count(q: int, n: int) -> int:
    """|Poly_n(F_q^*)| = (q-1)(q^n - (-1)^n)/(q+1): coeficiente de (1-qt^2)/((1-qt)(1+t))."""
    if n == 0:
        return 1
    return (q - 1) * (q ** n - (-1) ** n) // (q + 1)


# --- Criba y factorización ---

@lru_cache(maxsize=None)
def irreducible_sieve(p: int, f: int, max_degree: int) -> tuple[PolyFq, ...]:
    """Mónicos irreducibles distintos de T con grado <= max_degree (criba de Eratóstenes)."""
    field = build_field(p, f)
    found: list[PolyFq] = []
    for j in range(1, max_degree + 1):
        composites = set()
        for irr in found:
            if 2 * irr.degree > j:
                break
            for g in monic_polys(field, j - irr.degree):
                if g[0]:
                    composites.add(poly_mul(irr, g, field))
        for cand in monic_polys(field, j):
            if cand[0] and cand not in composites:
                found.append(cand)
    logger.debug("criba F_%d grado <= %d: %d irreducibles", field.q, max_degree, len(found))
    return tuple(found)


def factorize(
    f: PolyFq, field: FieldTable, sieve: Optional[tuple[PolyFq, ...]] = None
) -> list[PolyFq]:
    """Factores irreducibles distintos de f por división de prueba contra la criba."""
    if sieve is None:
        sieve = irreducible_sieve(field.p, field.f, f.degree // 2)
    factors: list[PolyFq] = []
    remaining = f
    for irr in sieve:
        if 2 * irr.degree > remaining.degree:
            break
        quot, rem = poly_divmod(remaining, irr, field)
        if rem:
            continue
        factors.append(irr)
        remaining = quot
        if not poly_divmod(remaining, irr, field)[1]:
            raise PolyspaceError("not squarefree")
    if remaining.degree >= 1:
        if remaining in factors:
            raise PolyspaceError("not squarefree")
        factors.append(remaining)
    return factors


def frobenius_type(
    f: PolyFq, d: int, field: FieldTable, sieve: Optional[tuple[PolyFq, ...]] = None
) -> LabeledCycleType:
    return LabeledCycleType.from_cycles(
        d, ((p.degree, norm_label(p, d, field)) for p in factorize(f, field, sieve))
    )


def delta_indicator(t: LabeledCycleType) -> int:
    return int(all(c == 0 for _, c, _ in t.parts))


# --- Escaneo por productos de irreducibles ---

class Irreducible(NamedTuple):
    poly: PolyFq
    degree: int
    label: int


CyclePath = tuple[tuple[int, int], ...]


def irreducibles_from_codes(
    codes_by_degree: Sequence[Sequence[int]], d: int, field: FieldTable
) -> tuple[Irreducible, ...]:
    """codes_by_degree[k - 1] son los códigos de los irreducibles de grado k; orden (grado, código)."""
    out = []
    for k, codes in enumerate(codes_by_degree, start=1):
        for code in codes:
            poly = monic_from_code(code, k, field.q)
            out.append(Irreducible(poly, k, norm_label(poly, d, field)))
    return tuple(out)


def reducible_products(
    field: FieldTable,
    k: int,
    irreducibles: Sequence[Irreducible],
    shard: int = 0,
    shards: int = 1,
    typed: bool = False,
) -> tuple[bytearray, Counter]:
    """
    Recorre los multiconjuntos de irreducibles (todos de grado < k) con grado total k, eligiendo
    índices no crecientes: cada mónico reducible de grado k con f(0) != 0 sale una sola vez.
    Devuelve el mapa de bits de sus códigos y, con `typed`, los squarefree agrupados por la
    secuencia de (grado, etiqueta) de sus factores.
    El shard s recibe los productos cuyo factor de mayor índice j cumple j % shards == s.
    """
    if not 0 <= shard < shards:
        raise PolyspaceError(f"shard {shard} out of range for {shards} shards")
    q = field.q
    seen = bytearray(q ** k)
    paths: Counter = Counter()
    degrees = [irr.degree for irr in irreducibles]
    last = [bisect_right(degrees, r) - 1 for r in range(k + 1)]

    def walk(prod: PolyFq, remaining: int, top: int, path: Optional[CyclePath]) -> None:
        # top es el último índice elegido: j == top es un factor repetido y path pasa a None
        for j in range(min(top, last[remaining]), -1, -1):
            irr = irreducibles[j]
            nxt = poly_mul(prod, irr.poly, field)
            step = None if path is None or j == top else path + ((irr.degree, irr.label),)
            rest = remaining - irr.degree
            if rest:
                walk(nxt, rest, j, step)
            else:
                seen[monic_code(nxt, q)] = 1
                if step is not None:
                    paths[step] += 1

    for j in range(shard, last[k - 1] + 1, shards):
        irr = irreducibles[j]
        walk(irr.poly, k - irr.degree, j, ((irr.degree, irr.label),) if typed else None)
    return seen, paths


def merge_bitmaps(parts: Sequence[bytes]) -> bytearray:
    acc = 0
    for part in parts:
        acc |= int.from_bytes(part, "little")
    return bytearray(acc.to_bytes(len(parts[0]), "little"))


def irreducible_codes(seen: bytearray, q: int) -> list[int]:
    """Complemento del mapa de reducibles entre los mónicos con f(0) != 0, en orden de código."""
    seen[0::q] = b"\x01" * (len(seen) // q)
    codes = []
    code = seen.find(0)
    while code != -1:
        codes.append(code)
        code = seen.find(0, code + 1)
    return codes


def types_from_paths(d: int, paths: Counter) -> Counter:
    histogram: Counter = Counter()
    for path, count in paths.items():
        histogram[LabeledCycleType.from_cycles(d, path)] += count
    return histogram


# --- Censo exacto por etiquetas ---

@lru_cache(maxsize=None)
def irreducible_label_counts(q: int, d: int, max_degree: int) -> tuple[tuple[int, ...], ...]:
    """
    N[i][c]: mónicos irreducibles p != T de grado i con etiqueta c (N[0] vacío).
    Cada etiqueta tiene (q^i - 1)/d elementos de F_{q^i}^*; un elemento de grado exacto j | i
    con etiqueta c' en nivel j tiene etiqueta (i/j) c' en nivel i.
    """
    if (q - 1) % d:
        raise PolyspaceError(f"d = {d} does not divide q - 1")
    exact: list[list[int]] = [[0] * d]
    for i in range(1, max_degree + 1):
        row = [(q ** i - 1) // d] * d
        for j in divisors(i)[:-1]:
            for c_low, count in enumerate(exact[j]):
                row[(i // j) * c_low % d] -= count
        exact.append(row)
    table = [tuple(e // i for e in exact[i]) if i else () for i in range(max_degree + 1)]
    return tuple(table)


def census_type_histogram(q: int, d: int, n: int) -> dict[LabeledCycleType, int]:
    """Número de f en Poly_n(F_q^*) por tipo: prod C(N[i][c], m_{i,c})."""
    counts = irreducible_label_counts(q, d, n)
    slots = [(i, c, counts[i][c]) for i in range(1, n + 1) for c in range(d) if counts[i][c]]
    histogram: dict[LabeledCycleType, int] = {}

    def walk(k: int, remaining: int, chosen: list[tuple[int, int, int]], weight: int) -> None:
        if remaining == 0:
            t = LabeledCycleType(d, tuple(sorted(chosen)))
            histogram[t] = histogram.get(t, 0) + weight
            return
        if k == len(slots):
            return
        i, c, available = slots[k]
        walk(k + 1, remaining, chosen, weight)
        m = 1
        while m * i <= remaining and m <= available:
            chosen.append((i, c, m))
            walk(k + 1, remaining - m * i, chosen, weight * comb(available, m))
            chosen.pop()
            m += 1

    walk(0, n, [], 1)
    return dict(sorted(histogram.items()))


# --- Forma norma ---

def _check_caps(field: FieldTable, n: int) -> None:
    if n > settings.normform_max_n or field.q > settings.normform_max_q:
        raise PolyspaceError("cap exceeded")


@lru_cache(maxsize=None)
def _norm_table(p: int, f: int, d: int, n: int) -> dict[PolyFq, tuple[PolyFq, int]]:
    """Norma mónica -> (B, c) con f = c * N(B), recorriendo B mónico de grado n en s."""
    field = build_field(p, f)
    omega = field.root_of_unity(d)
    table: dict[PolyFq, tuple[PolyFq, int]] = {}
    for b in monic_polys(field, n):
        norm = ONE
        for k in range(d):
            twist = field.pow(omega, k)
            # B(omega^k s): el coeficiente j se multiplica por omega^(k j)
            conj = PolyFq(field.mul(coef, field.pow(twist, j)) for j, coef in enumerate(b))
            norm = poly_mul(norm, conj, field)
        # N(B) es polinomio en t = s^d
        in_t = PolyFq(norm[j] for j in range(0, len(norm), d))
        monic = poly_monic(in_t, field)
        if monic not in table:
            table[monic] = (b, field.inv(in_t[-1]))
    return table


def norm_witness(f: PolyFq, d: int, field: FieldTable) -> Optional[tuple[PolyFq, int]]:
    """
    Busca B mónico en F_q[s] de grado n con f = c * N(B), N la norma de F_q(s)/F_q(t), t = s^d.
    Devuelve (B, c) o None. delta_n(sigma_f) = 1 exactamente cuando existe.
    """
    n = f.degree
    _check_caps(field, n)
    if d == 1:
        return f, 1
    return _norm_table(field.p, field.f, d, n).get(f)


def _binomial_search(f: PolyFq, d: int, field: FieldTable, sign: int) -> Optional[tuple[PolyFq, PolyFq]]:
    n = f.degree
    powers: dict[PolyFq, PolyFq] = {}
    for g in all_polys(field, n // d):
        powers.setdefault(poly_pow(g, d, field), g)
    for h in all_polys(field, (n - 1) // d):
        th = poly_shift(poly_pow(h, d, field), 1)
        # sign -1: f = g^d - t h^d ; sign +1: f = g^d + t h^d
        target = poly_add(f, th, field) if sign < 0 else poly_sub(f, th, field)
        g = powers.get(target)
        if g is not None:
            return g, h
    return None


def binomial_witnesses(f: PolyFq, d: int, field: FieldTable) -> dict[int, Optional[tuple[PolyFq, PolyFq]]]:
    """Testigos f = g^d - t h^d (clave -1) y f = g^d + t h^d (clave +1), buscados por separado."""
    _check_caps(field, f.degree)
    if d == 1:
        return {-1: (f, PolyFq()), 1: (f, PolyFq())}
    return {sign: _binomial_search(f, d, field, sign) for sign in (-1, 1)}


def norm_form_witness(f: PolyFq, d: int, field: FieldTable) -> Optional[tuple[PolyFq, PolyFq, int]]:
    """Primer testigo binomial (g, h, signo), probando antes el signo -1."""
    for sign, witness in binomial_witnesses(f, d, field).items():
        if witness is not None:
            g, h = witness
            return g, h, sign
    return None
