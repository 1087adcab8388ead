"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

Un CycNum guarda el vector completo de longitud m (coeficientes de zeta^0..zeta^(m-1))
reducido módulo el m-ésimo polinomio ciclotómico. La forma canónica es única: solo las
primeras phi(m) posiciones pueden ser no nulas.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Union

from sympy import Symbol, cyclotomic_poly, divisors, mobius, totient

from app.core.errors import CyclotomicError

_x = Symbol("x")

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def _phi(m: int) -> tuple[int, ...]:
    """Coeficientes de Phi_m, grado bajo primero (mónico)."""
    poly = cyclotomic_poly(m, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, m + 1) if gcd(u, m) == 1)


def _reduce(vec: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = _phi(m)
    deg = len(phi) - 1
    for k in range(m - 1, deg - 1, -1):
        c = vec[k]
        if c:
            shift = k - deg
            for j, pj in enumerate(phi):
                if pj:
                    vec[shift + j] -= c * pj
    return tuple(vec)


@lru_cache(maxsize=None)
def _trace_weight(m: int, e: int) -> Fraction:
    """Tr(zeta_m^e) / phi(m), que no depende del cuerpo ciclotómico donde se calcule."""
    r = m // gcd(e % m, m)
    return Fraction(int(mobius(r)), int(totient(r)))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CycNum:
    """Elemento exacto de Q(zeta_order). Inmutable."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar], *, reduced: bool = False):
        if order < 1:
            raise CyclotomicError(f"order must be positive, got {order}")
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > order:
            # exponentes mayores que m se pliegan con zeta^m = 1
            folded = [Fraction(0)] * order
            for k, c in enumerate(vec):
                folded[k % order] += c
            vec = folded
        vec.extend([Fraction(0)] * (order - len(vec)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(vec) if reduced else _reduce(vec, order))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    def __reduce__(self):
        return (CycNum, (self.order, self.coeffs))

    # --- Constructores ---
    @classmethod
    def from_rational(cls, value: Scalar, order: int = 1) -> "CycNum":
        return cls(order, [value], reduced=True)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycNum":
        vec = [0] * order
        vec[k % order] = 1
        return cls(order, vec)

    @classmethod
    def coerce(cls, value: "CycNum | Scalar", order: int = 1) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Rational)):
            return cls(order, [Fraction(value)], reduced=True)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycNum")

    # --- Cambio de orden ---
    def lift(self, order: int) -> "CycNum":
        """Reinterpreta el valor dentro de Q(zeta_order); order debe ser múltiplo de self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise CyclotomicError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        vec = [Fraction(0)] * order
        for k, c in enumerate(self.coeffs):
            if c:
                vec[k * step] = c
        return CycNum(order, vec)

    def _common(self, other) -> tuple["CycNum", "CycNum"]:
        other = CycNum.coerce(other, self.order)
        if other.order == self.order:
            return self, other
        m = _lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    # --- Aritmética de cuerpo ---
    def __add__(self, other) -> "CycNum":
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycNum(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)], reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, [-c for c in self.coeffs], reduced=True)

    def __sub__(self, other) -> "CycNum":
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycNum(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)], reduced=True)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return CycNum(self.order, [c * f for c in self.coeffs], reduced=True)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        m = a.order
        vec = [Fraction(0)] * m
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    vec[(i + j) % m] += x * y
        return CycNum(m, vec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycNum":
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise CyclotomicError("division by zero")
            f = Fraction(other)
            return CycNum(self.order, [c / f for c in self.coeffs], reduced=True)
        return self * CycNum.coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return CycNum.coerce(other, self.order) * self.inverse()

    def __pow__(self, exponent: int) -> "CycNum":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = CycNum.from_rational(1, self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # --- Automorfismos de Galois ---
    def galois(self, u: int) -> "CycNum":
        """sigma_u: zeta -> zeta^u, u coprimo con el orden."""
        m = self.order
        vec = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(k * u) % m] += c
        return CycNum(m, vec)

    def conj(self) -> "CycNum":
        return self.galois(-1 % self.order) if self.order > 2 else self

    def norm(self) -> Fraction:
        """Norma de Q(zeta_m)/Q: producto de todos los conjugados de Galois."""
        result = self
        for u in _units(self.order):
            if u != 1:
                result = result * self.galois(u)
        return result.to_rational()

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise CyclotomicError("division by zero")
        if self.is_rational():
            return CycNum(self.order, [1 / self.coeffs[0]], reduced=True)
        # a^-1 = (prod_{u != 1} sigma_u(a)) / N(a)
        others = CycNum.from_rational(1, self.order)
        for u in _units(self.order):
            if u != 1:
                others = others * self.galois(u)
        norm = (self * others).to_rational()
        return others / norm

    # --- Consultas ---
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError("not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        try:
            a, b = self._common(other)
        except (TypeError, CyclotomicError):
            return NotImplemented
        return a.coeffs == b.coeffs

    def conductor(self) -> int:
        """Menor divisor c del orden con el valor dentro de Q(zeta_c)."""
        m = self.order
        for c in divisors(m):
            c = int(c)
            if all(self.galois(u) == self for u in _units(m) if u % c == 1 % c):
                return c
        return m

    def _normalized_trace(self, shift: int) -> Fraction:
        # Tr(self * zeta_order^-shift) / phi(order)
        m = self.order
        return sum((c * _trace_weight(m, k - shift) for k, c in enumerate(self.coeffs) if c), Fraction(0))

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        # coordenadas de la forma traza sobre Q(zeta_c): iguales en cualquier orden múltiplo
        c = self.conductor()
        step = self.order // c
        return hash((c, tuple(self._normalized_trace(k * step) for k in range(c))))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycNum({self.coeffs[0]})"
        terms = [f"{c}*z{self.order}^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"CycNum({' + '.join(terms)})"


# --- Operaciones con nombre (API funcional) ---

def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_inv(a: CycNum) -> CycNum:
    return a.inverse()


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def cyc_to_rational(a: CycNum) -> Fraction:
    return a.to_rational()

