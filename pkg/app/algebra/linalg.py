"""
Fraction-free row reduction over CycNum.

Las filas se combinan como p*v - c*r (sin divisiones), por lo que el rango y la pertenencia a un
subespacio son exactos sobre Q(zeta_d).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from app.algebra.cyclotomic import CycNum

Vector = Sequence[CycNum]


class EchelonBasis:
    """Base escalonada incremental de un subespacio de Q(zeta_d)^n."""

    def __init__(self, vectors: Iterable[Vector] = ()):
        # (columna pivote, fila); triangular en orden de inserción
        self.rows: list[tuple[int, list[CycNum]]] = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Vector) -> list[CycNum]:
        v = list(vector)
        for pivot, row in self.rows:
            c = v[pivot]
            if not c:
                continue
            p = row[pivot]
            v = [p * x - c * y if (x or y) else x for x, y in zip(v, row)]
        return v

    def add(self, vector: Vector) -> bool:
        """Añade el vector; devuelve False si ya estaba en el span."""
        v = self.reduce(vector)
        for col, x in enumerate(v):
            if x:
                self.rows.append((col, v))
                return True
        return False

    def contains(self, vector: Vector) -> bool:
        return not any(self.reduce(vector))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def identity(size: int) -> list[list[int]]:
    return [[int(r == c) for c in range(size)] for r in range(size)]
