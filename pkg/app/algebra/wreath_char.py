"""
Character calculus on W_n = (Z/dZ)^n x| S_n.

Un elemento (g, sigma) actúa por e_i -> zeta^(g_i) e_(sigma(i)). Las clases de conjugación son
los tipos de ciclo etiquetados: la etiqueta de un ciclo es la suma de g sobre sus elementos.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Iterator

from app.algebra.cyclotomic import CycNum
from app.algebra.polyspace import LabeledCycleType, delta_indicator
from app.algebra.statistic import Statistic
from app.core.errors import StatisticError


@dataclass(frozen=True)
class WreathElement:
    d: int
    labels: tuple[int, ...]
    perm: tuple[int, ...]  # sigma(i) = perm[i], base 0

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, d: int, n: int) -> "WreathElement":
        return cls(d, (0,) * n, tuple(range(n)))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        # (w1 w2)(e_i) = zeta^(g2_i + g1_(s2(i))) e_(s1(s2(i)))
        if other.d != self.d or other.n != self.n:
            raise StatisticError("wreath elements of different groups")
        perm = tuple(self.perm[j] for j in other.perm)
        labels = tuple((other.labels[i] + self.labels[other.perm[i]]) % self.d for i in range(self.n))
        return WreathElement(self.d, labels, perm)

    def inverse(self) -> "WreathElement":
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        labels = tuple(-self.labels[inv[j]] % self.d for j in range(self.n))
        return WreathElement(self.d, labels, tuple(inv))

    def cycles(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.perm[i]
            out.append(cycle)
        return out

    def cycle_type(self) -> LabeledCycleType:
        return LabeledCycleType.from_cycles(
            self.d, ((len(c), sum(self.labels[i] for i in c)) for c in self.cycles())
        )

    @classmethod
    def representative(cls, t: LabeledCycleType) -> "WreathElement":
        """Bloques consecutivos en orden canónico; la etiqueta va en el primer elemento del ciclo."""
        perm: list[int] = []
        labels: list[int] = []
        start = 0
        for length, label in t.cycles():
            perm.extend(start + (k + 1) % length for k in range(length))
            labels.extend([label] + [0] * (length - 1))
            start += length
        return cls(t.d, tuple(labels), tuple(perm))

    @classmethod
    def random(cls, d: int, n: int, rng: random.Random) -> "WreathElement":
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(d, tuple(rng.randrange(d) for _ in range(n)), tuple(perm))


def all_elements(d: int, n: int) -> Iterator[WreathElement]:
    """Todos los d^n n! elementos de W_n (oráculo de fuerza bruta)."""
    for perm in permutations(range(n)):
        for labels in product(range(d), repeat=n):
            yield WreathElement(d, labels, perm)


def group_order(d: int, n: int) -> int:
    return d ** n * factorial(n)


def class_size(t: LabeledCycleType) -> int:
    """d^n n! / prod_{i,c} m! (i d)^m"""
    d = t.d
    centralizer = 1
    for i, _, m in t.parts:
        centralizer *= factorial(m) * (i * d) ** m
    return group_order(d, t.n) // centralizer


@lru_cache(maxsize=None)
def labeled_cycle_types(d: int, n: int) -> tuple[tuple[LabeledCycleType, int], ...]:
    """Todos los tipos de peso n con su tamaño de clase, en orden canónico."""
    slots = [(i, c) for i in range(1, n + 1) for c in range(d)]
    found: list[LabeledCycleType] = []

    def walk(k: int, remaining: int, chosen: list[tuple[int, int, int]]) -> None:
        if remaining == 0:
            found.append(LabeledCycleType(d, tuple(chosen)))
            return
        if k == len(slots):
            return
        i, c = slots[k]
        walk(k + 1, remaining, chosen)
        for m in range(1, remaining // i + 1):
            chosen.append((i, c, m))
            walk(k + 1, remaining - m * i, chosen)
            chosen.pop()

    walk(0, n, [])
    return tuple((t, class_size(t)) for t in sorted(found))


@dataclass
class ClassFunction:
    n: int
    d: int
    values: dict[LabeledCycleType, CycNum]
    provenance: str = "custom"

    def __post_init__(self):
        if len(self.values) != len(labeled_cycle_types(self.d, self.n)):
            raise StatisticError("class function table is incomplete")

    def __call__(self, t: LabeledCycleType) -> CycNum:
        return self.values[t]

    @classmethod
    def tabulate(
        cls, d: int, n: int, fn: Callable[[LabeledCycleType], CycNum], provenance: str = "custom"
    ) -> "ClassFunction":
        return cls(n, d, {t: fn(t) for t, _ in labeled_cycle_types(d, n)}, provenance)


def inner_product(a: ClassFunction, b: ClassFunction) -> CycNum:
    """(1/|W_n|) sum_t |t| a(t) conj(b(t))"""
    if a.n != b.n or a.d != b.d:
        raise StatisticError("class function mismatch")
    total = CycNum.from_rational(0, a.d)
    for t, size in labeled_cycle_types(a.d, a.n):
        x, y = a(t), b(t)
        if x and y:
            total = total + x * y.conj() * size
    return total / group_order(a.d, a.n)


def statistic_to_class_function(s: Statistic, n: int) -> ClassFunction:
    return ClassFunction.tabulate(s.d, n, s.evaluate, provenance="statistic")


def delta_class_function(d: int, n: int) -> ClassFunction:
    return ClassFunction.tabulate(
        d, n, lambda t: CycNum.from_rational(delta_indicator(t), d), provenance="delta"
    )


def constant_class_function(d: int, n: int, value: Fraction | int = 1) -> ClassFunction:
    return ClassFunction.tabulate(d, n, lambda t: CycNum.from_rational(value, d), provenance="custom")
