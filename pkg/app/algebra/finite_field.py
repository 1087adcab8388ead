"""
Finite fields F_q (q = p^f) with discrete-log tables, and polynomial arithmetic over F_q.

Los elementos de F_q son enteros 0..q-1: para f = 1 el propio residuo; para f > 1 los dígitos en
base p son los coeficientes (grado bajo primero) en F_p[a]/(modulus).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional

from sympy import factorint, isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from app.core.errors import FieldError
from app.core.settings import settings


# --- Dígitos en base p (solo para f > 1) ---

def _to_digits(x: int, p: int, f: int) -> list[int]:
    digits = []
    for _ in range(f):
        x, r = divmod(x, p)
        digits.append(r)
    return digits


def _from_digits(digits: Iterable[int], p: int) -> int:
    value = 0
    for d in reversed(list(digits)):
        value = value * p + d
    return value


def _mul_digits(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    f = len(modulus) - 1
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # modulus mónico: a^f = -(m_0 + ... + m_{f-1} a^{f-1})
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f + 1):
                prod[k - f + j] = (prod[k - f + j] - c * modulus[j]) % p
    return prod[:f]


@dataclass(frozen=True, eq=False)
class FieldTable:
    """F_q con generador fijo y tablas log/exp. Inmutable; se comparte entre workers."""

    p: int
    f: int
    q: int
    modulus: tuple[int, ...]
    generator: int
    log_table: tuple[int, ...]
    exp_table: tuple[int, ...]

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q}, p={self.p}, f={self.f}, generator={self.generator})"

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        p = self.p
        return _from_digits(
            ((x + y) % p for x, y in zip(_to_digits(a, p, self.f), _to_digits(b, p, self.f))), p
        )

    def neg(self, a: int) -> int:
        if self.f == 1:
            return -a % self.p
        p = self.p
        return _from_digits((-x % p for x in _to_digits(a, p, self.f)), p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def int_mul(self, k: int, a: int) -> int:
        """k * a con k entero (suma repetida)."""
        if self.f == 1:
            return k * a % self.p
        p = self.p
        return _from_digits((k * x % p for x in _to_digits(a, p, self.f)), p)

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.f == 1:
            return a * b % self.p
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise FieldError("division by zero")
        if self.f == 1:
            return pow(a, -1, self.p)
        return self.exp_table[-self.log_table[a] % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if not a:
            return 0 if e else 1
        return self.exp_table[self.log_table[a] * e % (self.q - 1)]

    def log(self, a: int) -> int:
        if not a:
            raise FieldError("log of zero")
        return self.log_table[a]

    def root_of_unity(self, d: int) -> int:
        """omega = gamma^((q-1)/d), raíz primitiva d-ésima de la unidad."""
        if (self.q - 1) % d:
            raise FieldError(f"{d} does not divide q - 1 = {self.q - 1}")
        return self.exp_table[(self.q - 1) // d % (self.q - 1)]


def _smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    if f == 1:
        return (0, 1)
    for r in range(p ** f):
        low = _to_digits(r, p, f)
        if gf_irreducible_p([1] + low[::-1], p, ZZ):
            return tuple(low) + (1,)
    raise FieldError(f"no irreducible of degree {f} over F_{p}")


@lru_cache(maxsize=None)
def build_field(p: int, f: int = 1) -> FieldTable:
    if not isprime(p):
        raise FieldError("not prime")
    if f < 1:
        raise FieldError("exponent must be positive")
    q = p ** f
    if q > settings.field_table_bound:
        raise FieldError("field too large")

    modulus = _smallest_irreducible(p, f)

    def slow_mul(a: int, b: int) -> int:
        if f == 1:
            return a * b % p
        return _from_digits(_mul_digits(_to_digits(a, p, f), _to_digits(b, p, f), modulus, p), p)

    def slow_pow(a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = slow_mul(result, a)
            a = slow_mul(a, a)
            e >>= 1
        return result

    # Generador: el menor x con x^((q-1)/r) != 1 para todo primo r | q-1
    ratios = [(q - 1) // r for r in primefactors(q - 1)]
    generator = next(x for x in range(1, q) if all(slow_pow(x, e) != 1 for e in ratios))

    exp_table = [0] * (q - 1)
    log_table = [-1] * q
    current = 1
    for k in range(q - 1):
        exp_table[k] = current
        log_table[current] = k
        current = slow_mul(current, generator)

    return FieldTable(
        p=p,
        f=f,
        q=q,
        modulus=modulus,
        generator=generator,
        log_table=tuple(log_table),
        exp_table=tuple(exp_table),
    )


def field_for_q(q: int) -> FieldTable:
    """Construye F_q a partir de q; q debe ser potencia de primo."""
    if q < 2:
        raise FieldError("not prime")
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"q = {q} is not a prime power")
    (p, f), = factors.items()
    return build_field(int(p), int(f))


# --- Polinomios sobre F_q ---

class PolyFq(tuple):
    """Coeficientes en F_q, grado bajo primero, sin ceros finales. El polinomio cero es ()."""

    def __new__(cls, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return super().__new__(cls, c)

    @property
    def degree(self) -> int:
        return len(self) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self) and self[-1] == 1

    def __repr__(self) -> str:
        return f"PolyFq{tuple(self)}"


ONE = PolyFq((1,))
T = PolyFq((0, 1))


def poly_add(a: PolyFq, b: PolyFq, field: FieldTable) -> PolyFq:
    if len(a) < len(b):
        a, b = b, a
    return PolyFq([field.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])


def poly_neg(a: PolyFq, field: FieldTable) -> PolyFq:
    return PolyFq(field.neg(x) for x in a)


def poly_sub(a: PolyFq, b: PolyFq, field: FieldTable) -> PolyFq:
    return poly_add(a, poly_neg(b, field), field)


def poly_scale(a: PolyFq, c: int, field: FieldTable) -> PolyFq:
    return PolyFq(field.mul(c, x) for x in a)


def poly_shift(a: PolyFq, k: int) -> PolyFq:
    """a * T^k"""
    return PolyFq((0,) * k + tuple(a)) if a else a


def poly_mul(a: PolyFq, b: PolyFq, field: FieldTable) -> PolyFq:
    if not a or not b:
        return PolyFq()
    out = [0] * (len(a) + len(b) - 1)
    if field.f == 1:
        p = field.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyFq(c % p for c in out)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return PolyFq(out)


def poly_pow(a: PolyFq, e: int, field: FieldTable) -> PolyFq:
    result, base = ONE, a
    while e:
        if e & 1:
            result = poly_mul(result, base, field)
        base = poly_mul(base, base, field)
        e >>= 1
    return result


def poly_divmod(a: PolyFq, b: PolyFq, field: FieldTable) -> tuple[PolyFq, PolyFq]:
    if not b:
        raise FieldError("zero modulus")
    db = len(b) - 1
    if len(a) <= db:
        return PolyFq(), a
    rem = list(a)
    quot = [0] * (len(a) - db)
    lead_inv = field.inv(b[-1])
    if field.f == 1:
        p = field.p
        for k in range(len(a) - 1 - db, -1, -1):
            c = rem[k + db] * lead_inv % p
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] = (rem[k + j] - c * b[j]) % p
    else:
        for k in range(len(a) - 1 - db, -1, -1):
            c = field.mul(rem[k + db], lead_inv)
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] = field.sub(rem[k + j], field.mul(c, b[j]))
    return PolyFq(quot), PolyFq(rem[:db])


def poly_mod(a: PolyFq, b: PolyFq, field: FieldTable) -> PolyFq:
    return poly_divmod(a, b, field)[1]


def poly_mulmod(a: PolyFq, b: PolyFq, modulus: PolyFq, field: FieldTable) -> PolyFq:
    return poly_mod(poly_mul(a, b, field), modulus, field)


def poly_powmod(base: PolyFq, exponent: int, modulus: PolyFq, field: FieldTable) -> PolyFq:
    """base^exponent mod modulus por cuadrados sucesivos."""
    if not modulus:
        raise FieldError("zero modulus")
    result = poly_mod(ONE, modulus, field)
    base = poly_mod(base, modulus, field)
    while exponent:
        if exponent & 1:
            result = poly_mulmod(result, base, modulus, field)
        base = poly_mulmod(base, base, modulus, field)
        exponent >>= 1
    return result


def poly_monic(a: PolyFq, field: FieldTable) -> PolyFq:
    if not a or a[-1] == 1:
        return a
    return poly_scale(a, field.inv(a[-1]), field)


def poly_gcd(a: PolyFq, b: PolyFq, field: FieldTable) -> PolyFq:
    if not a and not b:
        raise FieldError("gcd of two zero polynomials")
    while b:
        a, b = b, poly_mod(a, b, field)
    return poly_monic(a, field)


def poly_derivative(a: PolyFq, field: FieldTable) -> PolyFq:
    return PolyFq(field.int_mul(i, a[i]) for i in range(1, len(a)))


# --- Enumeración ---

def monic_polys(field: FieldTable, n: int) -> Iterator[PolyFq]:
    """Mónicos de grado n, orden lexicográfico desde el coeficiente c_{n-1}."""
    for top_down in product(range(field.q), repeat=n):
        yield PolyFq(top_down[::-1] + (1,))


def all_polys(field: FieldTable, max_degree: int) -> Iterator[PolyFq]:
    """Todos los polinomios de grado <= max_degree (incluido el cero)."""
    if max_degree < 0:
        yield PolyFq()
        return
    for top_down in product(range(field.q), repeat=max_degree + 1):
        yield PolyFq(top_down[::-1])


# --- Etiquetas ---

def root_label(p_irr: PolyFq, d: int, field: FieldTable, root: Optional[PolyFq] = None) -> int:
    """
    Etiqueta en Z/dZ de un factor irreducible: chi(raíz) para el carácter de orden d fijado por
    el generador. Se calcula c = root^((q^i - 1)/d) mod p_irr dentro de F_q[T]/(p_irr).
    `root` por defecto es T; cualquier otra raíz (p. ej. T^q) da la misma etiqueta.
    """
    if not p_irr or p_irr[0] == 0:
        raise FieldError("zero root")
    q = field.q
    if (q - 1) % d:
        raise FieldError("label not constant")
    i = p_irr.degree
    c = poly_powmod(T if root is None else root, (q ** i - 1) // d, p_irr, field)
    if len(c) != 1:
        raise FieldError("label not constant")
    step = (q - 1) // d
    log_v = field.log(c[0])
    if log_v % step:
        raise FieldError("label not constant")
    return (log_v // step) % d


def norm_label(p_irr: PolyFq, d: int, field: FieldTable) -> int:
    """
    Misma etiqueta que root_label sin exponenciar: T^((q^i-1)/d) = N(T)^((q-1)/d) y
    N(T) = (-1)^i p(0), así que la etiqueta es log((-1)^i p(0)) mod d.
    """
    if not p_irr or p_irr[0] == 0:
        raise FieldError("zero root")
    if (field.q - 1) % d:
        raise FieldError("label not constant")
    norm = field.neg(p_irr[0]) if p_irr.degree % 2 else p_irr[0]
    return field.log(norm) % d


# --- Códigos enteros de mónicos ---

def monic_code(a: PolyFq, q: int) -> int:
    """sum c_i q^i sobre los coeficientes bajo el líder; biyección de los mónicos de grado n con 0..q^n-1."""
    code = 0
    for c in reversed(a[:-1]):
        code = code * q + c
    return code


def monic_from_code(code: int, n: int, q: int) -> PolyFq:
    coeffs = []
    for _ in range(n):
        code, c = divmod(code, q)
        coeffs.append(c)
    return PolyFq(coeffs + [1])
