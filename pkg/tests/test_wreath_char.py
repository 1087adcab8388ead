import random
from collections import Counter
from fractions import Fraction

import pytest

from app.algebra.cyclotomic import CycNum
from app.algebra.polyspace import LabeledCycleType
from app.algebra.statistic import parse_statistic
from app.algebra.wreath_char import (
    ClassFunction,
    WreathElement,
    all_elements,
    class_size,
    constant_class_function,
    delta_class_function,
    group_order,
    inner_product,
    labeled_cycle_types,
    statistic_to_class_function,
)
from app.core.errors import StatisticError


def test_class_size_example() -> None:
    assert class_size(LabeledCycleType(2, ((1, 0, 1), (1, 1, 1)))) == 2
    assert class_size(LabeledCycleType(2, ((1, 0, 2),))) == 1
    assert class_size(LabeledCycleType(2, ((2, 0, 1),))) == 2


@pytest.mark.parametrize("d,n", [(1, 3), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_classes_match_brute_force(d: int, n: int) -> None:
    observed = Counter(w.cycle_type() for w in all_elements(d, n))
    expected = dict(labeled_cycle_types(d, n))
    assert observed == expected
    assert sum(expected.values()) == group_order(d, n)


def test_product_inverse_and_conjugation() -> None:
    rng = random.Random(7)
    for _ in range(50):
        v = WreathElement.random(3, 4, rng)
        w = WreathElement.random(3, 4, rng)
        assert w * w.inverse() == WreathElement.identity(3, 4)
        assert (v * w * v.inverse()).cycle_type() == w.cycle_type()


def test_product_is_associative() -> None:
    rng = random.Random(11)
    for _ in range(20):
        u, v, w = (WreathElement.random(2, 3, rng) for _ in range(3))
        assert (u * v) * w == u * (v * w)


@pytest.mark.parametrize("d,n", [(2, 3), (3, 3), (4, 2)])
def test_representatives_have_their_type(d: int, n: int) -> None:
    for t, _ in labeled_cycle_types(d, n):
        assert WreathElement.representative(t).cycle_type() == t


def test_inner_products() -> None:
    one = constant_class_function(2, 3)
    assert inner_product(one, one) == 1
    assert inner_product(delta_class_function(2, 1), constant_class_function(2, 1)) == Fraction(1, 2)
    chi = statistic_to_class_function(parse_statistic("X[1,chi 1]", 3), 2)
    # X_1^chi es el carácter de la representación estándar twisteada: norma 1
    assert inner_product(chi, chi) == 1


def test_inner_product_mismatch() -> None:
    with pytest.raises(StatisticError, match="class function mismatch"):
        inner_product(constant_class_function(2, 2), constant_class_function(2, 3))


def test_incomplete_class_function() -> None:
    with pytest.raises(StatisticError):
        ClassFunction(2, 2, {LabeledCycleType(2, ((1, 0, 2),)): CycNum.from_rational(1, 2)})


def _random_class_function(d: int, n: int, rng: random.Random) -> ClassFunction:
    return ClassFunction.tabulate(
        d, n, lambda t: CycNum(d, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)])
    )


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (4, 2), (3, 3)])
def test_inner_product_is_sesquilinear(d: int, n: int) -> None:
    rng = random.Random(d * 7 + n)
    for _ in range(4):
        a, b, c = (_random_class_function(d, n, rng) for _ in range(3))
        alpha = CycNum(d, [rng.randint(-3, 3) for _ in range(d)])
        combined = ClassFunction.tabulate(d, n, lambda t: alpha * a(t) + b(t))
        assert inner_product(combined, c) == alpha * inner_product(a, c) + inner_product(b, c)
        scaled = ClassFunction.tabulate(d, n, lambda t: alpha * c(t))
        assert inner_product(a, scaled) == alpha.conj() * inner_product(a, c)
        assert inner_product(b, a) == inner_product(a, b).conj()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inner_products_match_group_enumeration(n: int) -> None:
    rng = random.Random(n)
    functions = [
        statistic_to_class_function(parse_statistic(text, 2), n)
        for text in ("X[1,chi 1]*X[1,chi -1] - X[1,chi 0]", "X[2,chi 1]", "X[1,g 0]^2 + 1/3")
    ]
    functions += [_random_class_function(2, n, rng), delta_class_function(2, n)]
    elements = list(all_elements(2, n))
    for a in functions:
        for b in functions:
            total = CycNum.from_rational(0, 2)
            for w in elements:
                t = w.cycle_type()
                total = total + a(t) * b(t).conj()
            assert inner_product(a, b) == total / len(elements)
