"""
W_n-equivariant cohomology of the complement of {x_i = 0} u {x_i = zeta^k x_j} in C^n,
via Orlik-Solomon algebras.

El orden fijo de hiperplanos (Coord primero, después Diff lexicográfico) define la base NBC.
La acción de W_n no respeta ese orden, así que toda imagen se "endereza" a la base NBC con las
relaciones de circuito sum_j (-1)^j e_(C - c_j) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple, Optional, Union

from app.algebra.cyclotomic import CycNum
from app.algebra.linalg import EchelonBasis
from app.algebra.polyspace import LabeledCycleType
from app.algebra.statistic import Statistic
from app.algebra.wreath_char import (
    ClassFunction,
    WreathElement,
    group_order,
    inner_product,
    labeled_cycle_types,
    statistic_to_class_function,
)
from app.core.errors import CohomologyError
from app.core.logging import get_logger
from app.core.settings import settings

logger = get_logger(__name__)


class Coord(NamedTuple):
    """x_i = 0"""
    i: int


class Diff(NamedTuple):
    """x_i = zeta^k x_j, i < j"""
    i: int
    j: int
    k: int


Hyperplane = Union[Coord, Diff]


def _root(d: int, k: int):
    # Q(zeta_1) = Q(zeta_2) = Q: enteros bastan y la eliminación sigue siendo exacta
    if d == 1:
        return 1
    if d == 2:
        return -1 if k % 2 else 1
    return CycNum.zeta(d, k)


@dataclass(frozen=True)
class Arrangement:
    n: int
    d: int
    coordinates: bool
    hyperplanes: tuple[Hyperplane, ...]
    index: dict = field(compare=False, repr=False, hash=False)

    @property
    def normals(self) -> list[list]:
        out = []
        for h in self.hyperplanes:
            v = [0] * self.n
            v[h.i] = 1
            if isinstance(h, Diff):
                v[h.j] = -_root(self.d, h.k)
            out.append(v)
        return out

    def __len__(self) -> int:
        return len(self.hyperplanes)


def build_arrangement(n: int, d: int, coordinates: bool = True) -> Arrangement:
    if n < 1 or d < 1:
        raise CohomologyError("n and d must be ≥ 1")
    hyperplanes: list[Hyperplane] = [Coord(i) for i in range(n)] if coordinates else []
    hyperplanes += [Diff(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(d)]
    return Arrangement(
        n=n,
        d=d,
        coordinates=coordinates,
        hyperplanes=tuple(hyperplanes),
        index={h: idx for idx, h in enumerate(hyperplanes)},
    )


def act_on_hyperplane(w: WreathElement, h: Hyperplane) -> Hyperplane:
    """Imagen de H bajo w: x_(s(i)) zeta^(g_i) = zeta^k x_(s(j)) zeta^(g_j), normalizada a i < j."""
    if isinstance(h, Coord):
        return Coord(w.perm[h.i])
    a, b = w.perm[h.i], w.perm[h.j]
    k = (h.k + w.labels[h.i] - w.labels[h.j]) % w.d
    if a < b:
        return Diff(a, b, k)
    return Diff(b, a, -k % w.d)


def sort_sign(seq) -> tuple[int, tuple[int, ...]]:
    """(signo de la permutación que ordena seq, seq ordenada); signo 0 si hay repetidos."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0, ()
    inversions = sum(1 for x in range(len(items)) for y in range(x + 1, len(items)) if items[x] > items[y])
    return (-1 if inversions % 2 else 1), tuple(sorted(items))


@dataclass(frozen=True)
class OSComponent:
    degree: int
    basis: tuple[tuple[int, ...], ...]
    index: dict = field(compare=False, repr=False, hash=False)

    @property
    def rank(self) -> int:
        return len(self.basis)


class OrlikSolomon:
    """Base NBC por grado, clausuras y enderezamiento memoizados para un arreglo fijo."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self.normals = arr.normals
        self.components: list[OSComponent] = [OSComponent(0, ((),), {(): 0})]
        self._closures: dict[tuple[int, ...], frozenset[int]] = {}
        self._independent: dict[tuple[int, ...], bool] = {}
        self._straight: dict[tuple[int, ...], dict[int, int]] = {}

    # --- Matroide ---
    def is_independent(self, subset: tuple[int, ...]) -> bool:
        cached = self._independent.get(subset)
        if cached is None:
            basis = EchelonBasis()
            cached = all(basis.add(self.normals[h]) for h in subset)
            self._independent[subset] = cached
        return cached

    def closure(self, subset: tuple[int, ...]) -> frozenset[int]:
        """Clausura de un conjunto independiente ordenado."""
        cached = self._closures.get(subset)
        if cached is not None:
            return cached
        if len(subset) <= 1:
            cached = frozenset(subset)
        else:
            basis = EchelonBasis(self.normals[h] for h in subset)
            members = set(subset)
            members.update(
                h for h in range(len(self.normals)) if h not in members and basis.contains(self.normals[h])
            )
            cached = frozenset(members)
        self._closures[subset] = cached
        return cached

    # --- Base NBC ---
    def ensure(self, max_degree: int) -> list[OSComponent]:
        max_degree = min(max_degree, self.arr.n)
        while len(self.components) <= max_degree:
            degree = len(self.components)
            if comb(len(self.arr), degree) > settings.os_subset_budget:
                raise CohomologyError("budget exceeded")
            previous = self.components[-1].basis
            if not previous:
                break
            new: list[tuple[int, ...]] = []
            for tail in previous:
                lowest = tail[0] if tail else len(self.arr)
                spanned = self.closure(tail)
                for h in range(lowest):
                    if h in spanned:
                        continue
                    candidate = (h,) + tail
                    if min(self.closure(candidate)) == h:
                        new.append(candidate)
            new.sort()
            self.components.append(OSComponent(degree, tuple(new), {s: k for k, s in enumerate(new)}))
            logger.debug(
                "OS n=%d d=%d grado %d: rango %d", self.arr.n, self.arr.d, degree, len(new)
            )
        return self.components[: max_degree + 1]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(c.rank for c in self.components if c.rank)

    # --- Enderezamiento ---
    def straighten(self, subset: tuple[int, ...]) -> dict[int, int]:
        """Expresa e_S (S ordenado) en la base NBC de su grado: {índice: coeficiente entero}."""
        cached = self._straight.get(subset)
        if cached is None:
            cached = self._straighten(subset)
            self._straight[subset] = cached
        return cached

    def _straighten(self, subset: tuple[int, ...]) -> dict[int, int]:
        component = self.components[len(subset)]
        if subset in component.index:
            return {component.index[subset]: 1}
        if not self.is_independent(subset):
            return {}

        for j in range(len(subset) - 1, -1, -1):
            tail = subset[j:]
            h = min(self.closure(tail))
            if h < subset[j]:
                break
        else:
            raise CohomologyError(f"independent set {subset} outside the NBC basis")

        # circuito único dentro de tail + {h} que contiene h
        support = [t for t in tail if h not in self.closure(tuple(x for x in tail if x != t))]
        circuit = [h] + support
        rest = [s for s in subset if s not in support]
        sign0, _ = sort_sign(support + rest)

        result: dict[int, int] = {}
        for j in range(1, len(circuit)):
            coef = sign0 * (1 if j % 2 else -1)
            sign, ordered = sort_sign(circuit[:j] + circuit[j + 1:] + rest)
            if not sign:
                continue
            for idx, c in self.straighten(ordered).items():
                result[idx] = result.get(idx, 0) + coef * sign * c
        return {idx: c for idx, c in result.items() if c}

    # --- Acción de W_n ---
    def hyperplane_images(self, w: WreathElement) -> list[int]:
        index = self.arr.index
        return [index[act_on_hyperplane(w, h)] for h in self.arr.hyperplanes]

    def action_matrix(self, w: WreathElement, degree: int) -> list[list[int]]:
        """M[r][c] = coeficiente de la base r en w . (base c)."""
        components = self.ensure(degree)
        if degree >= len(components):
            return []
        component = components[degree]
        images = self.hyperplane_images(w)
        size = component.rank
        matrix = [[0] * size for _ in range(size)]
        for col, subset in enumerate(component.basis):
            sign, ordered = sort_sign(images[h] for h in subset)
            for row, c in self.straighten(ordered).items():
                matrix[row][col] += sign * c
        return matrix

    def trace(self, w: WreathElement, degree: int, images: Optional[list[int]] = None) -> int:
        components = self.ensure(degree)
        if degree >= len(components):
            return 0
        component = components[degree]
        if images is None:
            images = self.hyperplane_images(w)
        total = 0
        for col, subset in enumerate(component.basis):
            sign, ordered = sort_sign(images[h] for h in subset)
            total += sign * self.straighten(ordered).get(col, 0)
        return total


@lru_cache(maxsize=None)
def os_algebra(n: int, d: int, coordinates: bool = True) -> OrlikSolomon:
    return OrlikSolomon(build_arrangement(n, d, coordinates))


def os_components(arr: Arrangement, max_degree: Optional[int] = None) -> list[OSComponent]:
    return os_algebra(arr.n, arr.d, arr.coordinates).ensure(arr.n if max_degree is None else max_degree)


def action_matrix(w: WreathElement, i: int, arr: Arrangement) -> list[list[int]]:
    return os_algebra(arr.n, arr.d, arr.coordinates).action_matrix(w, i)


def product_formula_ranks(n: int, d: int) -> tuple[int, ...]:
    """Coeficientes de prod_{j<n} (1 + (j d + 1) t)."""
    coeffs = [1]
    for j in range(n):
        a = j * d + 1
        coeffs = [x + a * y for x, y in zip(coeffs + [0], [0] + coeffs)]
    return tuple(coeffs)


# --- Carácter graduado ---

@dataclass(frozen=True)
class GradedCharacter:
    n: int
    d: int
    degrees: tuple[ClassFunction, ...]

    def degree(self, i: int) -> ClassFunction:
        if i < len(self.degrees):
            return self.degrees[i]
        return ClassFunction.tabulate(self.d, self.n, lambda t: CycNum.from_rational(0, self.d), "cohomology")

    @property
    def ranks(self) -> tuple[int, ...]:
        identity = LabeledCycleType(self.d, ((1, 0, self.n),))
        return tuple(int(cf(identity).to_rational()) for cf in self.degrees)


@lru_cache(maxsize=None)
def graded_character(
    n: int, d: int, max_degree: Optional[int] = None, coordinates: bool = True
) -> GradedCharacter:
    """Traza de w en cada H^i, un representante canónico por tipo de ciclo etiquetado."""
    algebra = os_algebra(n, d, coordinates)
    top = len(algebra.ensure(n if max_degree is None else max_degree))
    traces: list[dict[LabeledCycleType, CycNum]] = [{} for _ in range(top)]
    for t, _ in labeled_cycle_types(d, n):
        w = WreathElement.representative(t)
        images = algebra.hyperplane_images(w)
        for i in range(top):
            traces[i][t] = CycNum.from_rational(algebra.trace(w, i, images), d)
    logger.debug("carácter graduado n=%d d=%d: %d tipos, grados 0..%d", n, d, len(traces[0]), top - 1)
    return GradedCharacter(n, d, tuple(ClassFunction(n, d, tr, "cohomology") for tr in traces))


# --- Dimensiones invariantes ---

def _as_dimension(value: CycNum, what: str) -> int:
    q = value.to_rational()
    if q.denominator != 1 or q < 0:
        raise CohomologyError(f"{what} is not a nonnegative integer: {q}")
    return int(q)


def invariant_dimension(i: int, n: int, a: int, d: int) -> int:
    """dim (H^i_n)^(W_(n-a)), con W_(n-a) actuando sobre las primeras n - a coordenadas."""
    if not 0 <= a <= n:
        raise CohomologyError(f"a = {a} outside 0..{n}")
    if i < 0:
        return 0
    character = graded_character(n, d, i).degree(i)
    total = CycNum.from_rational(0, d)
    for t, size in labeled_cycle_types(d, n - a):
        total = total + character(t.with_fixed_points(a)) * size
    return _as_dimension(total / group_order(d, n - a), "invariant dimension")


@dataclass(frozen=True)
class StableValue:
    value: CycNum
    onset: int
    values: tuple[tuple[int, CycNum], ...]


def stable_inner_product(P: Statistic, i: int, n_max: Optional[int] = None) -> StableValue:
    """
    <P_n, H^i_n> para n = max(i, 1)..n_max; devuelve el valor común de la meseta final (al
    menos tres n seguidos) y el primer n desde el que todos los valores coinciden.
    """
    d = P.d
    if n_max is None:
        n_max = i + P.degree + settings.plateau_margin
    values: list[tuple[int, CycNum]] = []
    for n in range(max(i, 1), n_max + 1):
        h = graded_character(n, d, i).degree(i)
        values.append((n, inner_product(statistic_to_class_function(P, n), h)))
        logger.debug("<%s, H^%d> en n=%d: %s", P, i, n, values[-1][1])
    if len(values) < 3 or not values[-1][1] == values[-2][1] == values[-3][1]:
        raise CohomologyError("no plateau within n_max")
    last = values[-1][1]
    onset = values[-1][0]
    for n, v in reversed(values):
        if v != last:
            break
        onset = n
    return StableValue(value=last, onset=onset, values=tuple(values))


# --- A(G, d)_n y la cota tensorial ---

def agd_algebra(n: int, d: int) -> tuple[int, ...]:
    """Rangos graduados del álgebra OS del subarreglo {x_i = zeta^k x_j} (sin Coord)."""
    algebra = os_algebra(n, d, coordinates=False)
    algebra.ensure(n)
    return algebra.ranks


def _exterior_trace(t: LabeledCycleType, j: int) -> int:
    """Traza de la permutación en Lambda^j de n generadores: coef. de t^j en prod (1 - (-t)^l)."""
    poly = [1]
    for length, _ in t.cycles():
        term = [0] * (length + 1)
        term[0] = 1
        term[length] = -((-1) ** length)
        out = [0] * (len(poly) + length)
        for a, x in enumerate(poly):
            if x:
                for b, y in enumerate(term):
                    if y:
                        out[a + b] += x * y
        poly = out
    return poly[j] if j < len(poly) else 0


class TensorBound(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def tensor_bound(i: int, n: int, a: int, d: int) -> TensorBound:
    """
    dim (H^i)^(W_(n-a)) <= d^a * dim ((Lambda ⊗ A)_i)^(S_(n-a)), con Lambda el álgebra exterior de
    H^*((C^*)^n) y A el álgebra OS del arreglo de trenzas (G trivial).
    """
    lhs = invariant_dimension(i, n, a, d)
    braid = graded_character(n, 1, i, coordinates=False)
    total = Fraction(0)
    for t, size in labeled_cycle_types(1, n - a):
        full = t.with_fixed_points(a)
        value = sum(
            _exterior_trace(full, j) * braid.degree(i - j)(full).to_rational() for j in range(i + 1)
        )
        total += size * value
    dim = total / factorial(n - a)
    if dim.denominator != 1:
        raise CohomologyError(f"tensor invariant dimension is not an integer: {dim}")
    rhs = d ** a * int(dim)
    return TensorBound(lhs, rhs, lhs <= rhs)


# --- Oráculo: retículo de flats ---

def poincare_polynomial(arr: Arrangement) -> tuple[int, ...]:
    """sum_F |mu(0, F)| t^rank(F), calculado sobre el retículo de intersecciones."""
    algebra = os_algebra(arr.n, arr.d, arr.coordinates)
    levels: list[dict[frozenset[int], tuple[int, ...]]] = [{frozenset(): ()}]
    while True:
        level: dict[frozenset[int], tuple[int, ...]] = {}
        for flat, basis in levels[-1].items():
            for h in range(len(arr)):
                if h in flat:
                    continue
                new_basis = tuple(sorted(basis + (h,)))
                level.setdefault(algebra.closure(new_basis), new_basis)
        if not level:
            break
        levels.append(level)

    mobius: dict[frozenset[int], int] = {frozenset(): 1}
    coeffs = [1]
    for rank in range(1, len(levels)):
        total = 0
        for flat in levels[rank]:
            mu = -sum(
                mobius[lower] for r in range(rank) for lower in levels[r] if lower < flat
            )
            mobius[flat] = mu
            total += abs(mu)
        coeffs.append(total)
    return tuple(coeffs)
