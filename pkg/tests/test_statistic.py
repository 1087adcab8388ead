from fractions import Fraction

import pytest

from app.algebra.cyclotomic import CycNum
from app.algebra.polyspace import LabeledCycleType
from app.algebra.statistic import Atom, Const, Mul, Sub, evaluate, parse_statistic
from app.algebra.wreath_char import labeled_cycle_types
from app.core.errors import StatisticError, StatisticSyntaxError

GAUSS = "X[1,chi 1]*X[1,chi -1] - X[1,chi 0]"


def test_parse_tree_shape() -> None:
    s = parse_statistic(GAUSS, 2)
    assert isinstance(s.tree, Sub)
    assert isinstance(s.tree.left, Mul)
    assert s.tree.right == Atom(1, "chi", 0)
    assert s.tree.left.right == Atom(1, "chi", 1)  # -1 mod 2
    assert s.degree == 2


def test_labels_reduce_mod_d() -> None:
    assert parse_statistic("X[1,g=3]", 2).tree == Atom(1, "g", 1)
    assert parse_statistic("X[2, chi -1]", 3).tree == Atom(2, "chi", 2)


def test_rational_constants() -> None:
    s = parse_statistic("1/2", 2)
    assert s.tree == Const(Fraction(1, 2))
    assert s.degree == 0
    assert parse_statistic("3", 1).tree == Const(Fraction(3))


def test_weighted_degree() -> None:
    assert parse_statistic("X[2,g 0]^2 + X[1,g 0]", 2).degree == 4
    assert parse_statistic("(X[1,g 0] + 1)^2", 2).degree == 2
    assert parse_statistic("X[3,chi 1] - X[3,chi 1]", 2).degree == 0


def test_evaluate_gauss_statistic() -> None:
    s = parse_statistic(GAUSS, 2)
    split = LabeledCycleType(2, ((1, 0, 1), (1, 1, 1)))
    assert s.evaluate(split) == -2
    two_fixed = LabeledCycleType(2, ((1, 0, 2),))
    assert s.evaluate(two_fixed) == 2
    inert = LabeledCycleType(2, ((2, 1, 1),))
    assert s.evaluate(inert) == 0


def test_chi_atoms_use_roots_of_unity() -> None:
    s = parse_statistic("X[1,chi 1]", 3)
    t = LabeledCycleType(3, ((1, 1, 1), (1, 2, 2)))
    assert s.evaluate(t) == CycNum.zeta(3) + 2 * CycNum.zeta(3, 2)


@pytest.mark.parametrize(
    "text,d",
    [
        (GAUSS, 2),
        ("X[1,chi 1]*X[1,chi -1] - X[1,chi 0]", 3),
        ("(X[1,chi 1] + 1/3)^3 - 2*X[2,g 1]*X[1,chi 2]", 3),
        ("-X[2,chi 1]^2 + X[1,g 0]*X[1,g 1]", 2),
        ("X[1,chi 1]^2 + X[1,chi 3]", 4),
    ],
)
def test_tree_agrees_with_normal_form(text: str, d: int) -> None:
    s = parse_statistic(text, d)
    for n in range(1, 4):
        for t, _ in labeled_cycle_types(d, n):
            assert s.evaluate(t) == s.evaluate_normal_form(t), (text, t)


@pytest.mark.parametrize(
    "text,offset",
    [
        ("X[1,chi 1] $ 2", 11),
        ("X[1,chi 1] + ?", 13),
        ("X[1,psi 1]", 4),
        ("1 + 2 é", 6),
    ],
)
def test_syntax_errors_report_byte_offset(text: str, offset: int) -> None:
    with pytest.raises(StatisticSyntaxError) as err:
        parse_statistic(text, 2)
    assert err.value.offset == offset
    assert str(err.value).startswith(f"syntax error at byte {offset}")


def test_truncated_input_is_a_syntax_error() -> None:
    with pytest.raises(StatisticSyntaxError) as err:
        parse_statistic("X[1,chi 1] +", 2)
    assert 0 <= err.value.offset <= len("X[1,chi 1] +")


def test_semantic_errors() -> None:
    with pytest.raises(StatisticError, match="i must be"):
        parse_statistic("X[0,g 1]", 2)
    with pytest.raises(StatisticSyntaxError):
        parse_statistic("X[1,g 1]^0", 2)
    with pytest.raises(StatisticSyntaxError):
        parse_statistic("1/0", 2)


def test_modulus_mismatch() -> None:
    s = parse_statistic("X[1,g 0]", 2)
    with pytest.raises(StatisticError, match="modulus mismatch"):
        evaluate(s, LabeledCycleType(3, ((1, 0, 1),)))
