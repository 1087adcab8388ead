"""
Statistic DSL: polinomios de carácter en los átomos X[i, g k] y X[i, chi j].

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-'? atom ('^' posint)?
    atom   := 'X[' posint ',' label ']' | rational | '(' expr ')'
    label  := ('g' | 'chi') '='? int

X[i, chi j] se expande a sum_k zeta_d^(j k) X[i, g k]; las etiquetas se reducen módulo d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import lark

from app.algebra.cyclotomic import CycNum
from app.algebra.polyspace import LabeledCycleType
from app.core.errors import StatisticError, StatisticSyntaxError

GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product       -> add
    | sum "-" product       -> sub

?product: unary
    | product "*" unary     -> mul

?unary: power
    | "-" unary             -> neg

?power: atom
    | atom "^" INT          -> pow

?atom: xvar
    | RATIONAL              -> rational
    | INT                   -> integer
    | "(" sum ")"

xvar: "X" "[" INT "," LABEL_KIND "="? SIGNED_INT "]"

LABEL_KIND: "g" | "chi"
RATIONAL.2: /\d+\/\d+/

%import common.INT
%import common.SIGNED_INT
%import common.WS
%ignore WS
"""

_parser = lark.Lark(GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True)

# Monomio: tupla ordenada de ((i, k), exponente) en los átomos X[i, g k]
Monomial = tuple[tuple[tuple[int, int], int], ...]
NormalForm = dict[Monomial, CycNum]


# --- Forma normal expandida ---

def _nf_add(a: NormalForm, b: NormalForm, sign: int = 1) -> NormalForm:
    out = dict(a)
    for mono, coef in b.items():
        value = out.get(mono, 0) + coef * sign
        if value:
            out[mono] = value
        else:
            out.pop(mono, None)
    return out


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for atom, e in b:
        exps[atom] = exps.get(atom, 0) + e
    return tuple(sorted(exps.items()))


def _nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    out: NormalForm = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = _mono_mul(ma, mb)
            value = out.get(mono, 0) + ca * cb
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
    return out


# --- AST ---

@dataclass(frozen=True)
class Const:
    value: Fraction

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return CycNum.from_rational(self.value, t.d)

    def expand(self, d: int) -> NormalForm:
        return {(): CycNum.from_rational(self.value, d)} if self.value else {}


@dataclass(frozen=True)
class Atom:
    i: int
    kind: str  # "g" | "chi"
    k: int

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        if self.kind == "g":
            return CycNum.from_rational(t.multiplicity(self.i, self.k), t.d)
        d = t.d
        total = CycNum.from_rational(0, d)
        for c in range(d):
            m = t.multiplicity(self.i, c)
            if m:
                total = total + CycNum.zeta(d, self.k * c) * m
        return total

    def expand(self, d: int) -> NormalForm:
        if self.kind == "g":
            return {(((self.i, self.k), 1),): CycNum.from_rational(1, d)}
        return {(((self.i, c), 1),): CycNum.zeta(d, self.k * c) for c in range(d)}


@dataclass(frozen=True)
class Neg:
    operand: "Node"

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return -self.operand.evaluate(t)

    def expand(self, d: int) -> NormalForm:
        return {m: -c for m, c in self.operand.expand(d).items()}


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return self.left.evaluate(t) + self.right.evaluate(t)

    def expand(self, d: int) -> NormalForm:
        return _nf_add(self.left.expand(d), self.right.expand(d))


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return self.left.evaluate(t) - self.right.evaluate(t)

    def expand(self, d: int) -> NormalForm:
        return _nf_add(self.left.expand(d), self.right.expand(d), sign=-1)


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return self.left.evaluate(t) * self.right.evaluate(t)

    def expand(self, d: int) -> NormalForm:
        return _nf_mul(self.left.expand(d), self.right.expand(d))


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return self.base.evaluate(t) ** self.exponent

    def expand(self, d: int) -> NormalForm:
        base = self.base.expand(d)
        out: NormalForm = {(): CycNum.from_rational(1, d)}
        for _ in range(self.exponent):
            out = _nf_mul(out, base)
        return out


Node = Union[Const, Atom, Neg, Add, Sub, Mul, Pow]


@dataclass(frozen=True)
class Statistic:
    """Polinomio de carácter sobre W_n, para todo n a la vez."""

    text: str
    d: int
    tree: Node
    normal_form: NormalForm = field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        """Grado ponderado: X_i cuenta como grado i."""
        return max((sum(i * e for (i, _), e in mono) for mono in self.normal_form), default=0)

    def evaluate(self, t: LabeledCycleType) -> CycNum:
        return evaluate(self, t)

    def evaluate_normal_form(self, t: LabeledCycleType) -> CycNum:
        _check_modulus(self, t)
        total = CycNum.from_rational(0, self.d)
        for mono, coef in self.normal_form.items():
            term = 1
            for (i, k), e in mono:
                term *= t.multiplicity(i, k) ** e
            if term:
                total = total + coef * term
        return total

    def __str__(self) -> str:
        return self.text


def _check_modulus(s: Statistic, t: LabeledCycleType) -> None:
    if s.d != t.d:
        raise StatisticError(f"modulus mismatch: statistic d={s.d}, type d={t.d}")


def evaluate(s: Statistic, t: LabeledCycleType) -> CycNum:
    _check_modulus(s, t)
    return s.tree.evaluate(t)


# --- Parser ---

def _byte_offset(text: str, pos) -> int:
    if pos is None or pos < 0:
        pos = len(text)
    return len(text[:pos].encode("utf-8"))


def _to_ast(node, d: int, text: str) -> Node:
    if isinstance(node, lark.Token):
        raise StatisticError(f"unexpected token {node!r}")

    if node.data == "integer":
        return Const(Fraction(int(node.children[0])))

    elif node.data == "rational":
        num, den = str(node.children[0]).split("/")
        if int(den) == 0:
            raise StatisticSyntaxError("zero denominator", _byte_offset(text, node.children[0].start_pos))
        return Const(Fraction(int(num), int(den)))

    elif node.data == "xvar":
        index, kind, label = node.children
        if int(index) < 1:
            raise StatisticError("i must be ≥ 1")
        return Atom(int(index), str(kind), int(label) % d)

    elif node.data == "neg":
        return Neg(_to_ast(node.children[0], d, text))

    elif node.data == "pow":
        base, exponent = node.children
        if int(exponent) < 1:
            raise StatisticSyntaxError("exponent must be ≥ 1", _byte_offset(text, exponent.start_pos))
        return Pow(_to_ast(base, d, text), int(exponent))

    elif node.data in ("add", "sub", "mul"):
        left, right = (_to_ast(c, d, text) for c in node.children)
        return {"add": Add, "sub": Sub, "mul": Mul}[node.data](left, right)

    raise StatisticError(f"unknown node {node.data}")


def parse_statistic(text: str, d: int) -> Statistic:
    if d < 1:
        raise StatisticError("d must be ≥ 1")
    try:
        parsed = _parser.parse(text)
    except lark.UnexpectedCharacters as e:
        raise StatisticSyntaxError(f"unexpected character {e.char!r}", _byte_offset(text, e.pos_in_stream))
    except lark.UnexpectedToken as e:
        raise StatisticSyntaxError(f"unexpected token {str(e.token)!r}", _byte_offset(text, e.pos_in_stream))
    except lark.UnexpectedEOF:
        raise StatisticSyntaxError("unexpected end of input", _byte_offset(text, -1))
    except lark.UnexpectedInput as e:
        raise StatisticSyntaxError("invalid input", _byte_offset(text, e.pos_in_stream))

    tree = _to_ast(parsed, d, text)
    return Statistic(text=text, d=d, tree=tree, normal_form=tree.expand(d))
