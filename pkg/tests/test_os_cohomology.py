import random
from fractions import Fraction

import pytest

from app.algebra.linalg import identity, mat_mul
from app.algebra.os_cohomology import (
    OrlikSolomon,
    TensorBound,
    act_on_hyperplane,
    action_matrix,
    agd_algebra,
    build_arrangement,
    graded_character,
    invariant_dimension,
    os_algebra,
    os_components,
    poincare_polynomial,
    product_formula_ranks,
    sort_sign,
    stable_inner_product,
    tensor_bound,
)
from app.algebra.statistic import parse_statistic
from app.algebra.wreath_char import WreathElement, all_elements, labeled_cycle_types
from app.core.errors import CohomologyError
from app.core.settings import settings

GAUSS = "X[1,chi 1]*X[1,chi -1] - X[1,chi 0]"


def test_product_formula() -> None:
    assert product_formula_ranks(2, 2) == (1, 4, 3)
    assert product_formula_ranks(3, 2) == (1, 9, 23, 15)


@pytest.mark.parametrize("n,d", [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (2, 4)])
def test_nbc_ranks_match_product_formula(n: int, d: int) -> None:
    arr = build_arrangement(n, d)
    assert tuple(c.rank for c in os_components(arr)) == product_formula_ranks(n, d)
    assert graded_character(n, d).ranks == product_formula_ranks(n, d)


@pytest.mark.slow
@pytest.mark.parametrize("n,d", [(3, 3), (4, 2)])
def test_nbc_ranks_match_product_formula_large(n: int, d: int) -> None:
    assert graded_character(n, d).ranks == product_formula_ranks(n, d)


@pytest.mark.parametrize(
    "n,d",
    [(n, d) for n in range(1, 4) for d in range(1, 4)]
    + [pytest.param(4, d, marks=pytest.mark.slow) for d in range(1, 4)],
)
def test_lattice_oracle(n: int, d: int) -> None:
    assert poincare_polynomial(build_arrangement(n, d)) == product_formula_ranks(n, d)


def test_arrangement_without_coordinates() -> None:
    assert agd_algebra(2, 2) == (1, 2, 1)
    assert agd_algebra(2, 1) == (1, 1)
    assert agd_algebra(3, 1) == (1, 3, 2)
    assert agd_algebra(3, 2) == (1, 6, 11, 6)
    assert poincare_polynomial(build_arrangement(3, 2, coordinates=False)) == (1, 6, 11, 6)


def test_hyperplane_action() -> None:
    w = WreathElement(2, (1, 0), (1, 0))
    arr = build_arrangement(2, 2)
    images = sorted(act_on_hyperplane(w, h) for h in arr.hyperplanes)
    assert images == sorted(arr.hyperplanes)


def test_sort_sign() -> None:
    assert sort_sign([2, 0, 1]) == (1, (0, 1, 2))
    assert sort_sign([1, 0]) == (-1, (0, 1))
    assert sort_sign([1, 1]) == (0, ())


@pytest.mark.parametrize("n,d", [(3, 2), (2, 3), (3, 1)])
def test_action_is_functorial(n: int, d: int) -> None:
    arr = build_arrangement(n, d)
    rng = random.Random(n * 10 + d)
    for degree in range(1, n + 1):
        size = os_components(arr)[degree].rank
        assert action_matrix(WreathElement.identity(d, n), degree, arr) == identity(size)
        for _ in range(6):
            u = WreathElement.random(d, n, rng)
            v = WreathElement.random(d, n, rng)
            product = action_matrix(u * v, degree, arr)
            assert product == mat_mul(action_matrix(u, degree, arr), action_matrix(v, degree, arr))


def test_trace_matches_matrix() -> None:
    algebra = os_algebra(3, 2)
    rng = random.Random(5)
    for _ in range(10):
        w = WreathElement.random(2, 3, rng)
        for degree in range(4):
            matrix = algebra.action_matrix(w, degree)
            assert algebra.trace(w, degree) == sum(matrix[k][k] for k in range(len(matrix)))


def test_low_degree_characters() -> None:
    character = graded_character(3, 2)
    arr = build_arrangement(3, 2)
    for t, _ in labeled_cycle_types(2, 3):
        assert character.degree(0)(t) == 1
        w = WreathElement.representative(t)
        fixed = sum(1 for h in arr.hyperplanes if act_on_hyperplane(w, h) == h)
        assert character.degree(1)(t) == fixed
    assert character.degree(7)(t) == 0


def test_invariant_dimensions() -> None:
    assert invariant_dimension(1, 2, 0, 2) == 2
    assert invariant_dimension(2, 2, 1, 2) == 2
    for i, rank in enumerate(product_formula_ranks(3, 2)):
        assert invariant_dimension(i, 3, 3, 2) == rank
    with pytest.raises(CohomologyError):
        invariant_dimension(1, 2, 3, 2)


def test_tensor_bound() -> None:
    assert tensor_bound(1, 2, 0, 2) == TensorBound(2, 2, True)
    assert tensor_bound(2, 2, 0, 2) == TensorBound(1, 1, True)
    assert tensor_bound(2, 2, 1, 2) == TensorBound(2, 6, True)
    for a in range(4):
        for i in range(4):
            assert tensor_bound(i, 3, a, 2).holds


def test_budget_exceeded(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "os_subset_budget", 1)
    with pytest.raises(CohomologyError, match="budget exceeded"):
        OrlikSolomon(build_arrangement(2, 2)).ensure(2)


@pytest.mark.parametrize(
    "text,d,expected",
    [
        ("1", 2, [1, 2, 2]),
        (GAUSS, 2, [None, 1, 5]),
        ("X[1,chi 1]*X[1,chi -1]", 2, [1, 5, 13]),
        ("X[1,chi 0]", 2, [1, 4, 8]),
        ("X[2,chi 1]", 2, [None, Fraction(1, 2), Fraction(3, 2)]),
        ("2*X[2,chi 1]", 2, [None, 1, 3]),
    ],
)
def test_stable_inner_products(text: str, d: int, expected: list) -> None:
    stat = parse_statistic(text, d)
    for i, value in enumerate(expected):
        if value is None:
            continue
        assert stable_inner_product(stat, i).value == value, (text, i)


def test_gauss_statistic_onset() -> None:
    stable = stable_inner_product(parse_statistic(GAUSS, 2), 1)
    assert stable.onset == 2
    assert stable.values[0] == (1, 0)


def test_no_plateau() -> None:
    with pytest.raises(CohomologyError, match="no plateau"):
        stable_inner_product(parse_statistic(GAUSS, 2), 1, n_max=2)


def test_transposition_trace_without_labels() -> None:
    arr = build_arrangement(2, 1)
    swap = WreathElement(1, (0, 0), (1, 0))
    matrix = action_matrix(swap, 1, arr)
    assert sum(matrix[k][k] for k in range(len(matrix))) == 1


def test_traces_are_class_functions() -> None:
    algebra = os_algebra(2, 2)
    character = graded_character(2, 2)
    for w in all_elements(2, 2):
        for degree in range(3):
            assert algebra.trace(w, degree) == character.degree(degree)(w.cycle_type())


@pytest.mark.parametrize("n,d", [(3, 2), (2, 3), (3, 1), pytest.param(3, 3, marks=pytest.mark.slow)])
def test_random_traces_depend_only_on_cycle_type(n: int, d: int) -> None:
    algebra = os_algebra(n, d)
    character = graded_character(n, d)
    rng = random.Random(17 * n + d)
    for _ in range(15):
        w = WreathElement.random(d, n, rng)
        for degree in range(n + 1):
            assert algebra.trace(w, degree) == character.degree(degree)(w.cycle_type())


@pytest.mark.parametrize("a", [0, 1])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_invariant_dimension_is_eventually_constant(i: int, a: int) -> None:
    start = 2 * i + a + 1
    dims = [invariant_dimension(i, n, a, 2) for n in range(start, start + 2)]
    assert dims[0] == dims[1]


def test_invariant_dimension_small_values() -> None:
    # órbitas de hiperplanos bajo W_(n-1)
    assert invariant_dimension(1, 2, 1, 2) == 3
    assert invariant_dimension(1, 3, 1, 2) == 4
    assert invariant_dimension(1, 4, 1, 2) == 4


def test_gauss_statistic_second_degree() -> None:
    stable = stable_inner_product(parse_statistic(GAUSS, 2), 2)
    assert stable.value == 5
    assert stable.values[:3] == ((2, 1), (3, 4), (4, 5))


def test_two_point_tail_is_not_a_plateau() -> None:
    # n = 2..5 da 1, 4, 5, 5
    with pytest.raises(CohomologyError, match="no plateau"):
        stable_inner_product(parse_statistic(GAUSS, 2), 2, n_max=5)
