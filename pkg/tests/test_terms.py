import pytest

from demorgan import build
from demorgan.terms import (
    E, F_, Const, Var, check_equation, check_quasi_equation, eq, evaluate, le, parse_atom, parse_term,
    law_by_name, applicable_laws,
)
from demorgan.errors import UndefinedConnective

x, y, z = Var("x"), Var("y"), Var("z")


def test_evaluate_constants_on_c4():
    A = build("C4")
    f = A.neg[A.e]
    assert evaluate(A, Const("f")) == f
    assert evaluate(A, Const("1")) == A.fusion[f][f] == A.top
    assert evaluate(A, Const("0")) == A.bottom


def test_operators_match_tables():
    A = build("G2")
    for a in range(A.size):
        for b in range(A.size):
            env = {"x": a, "y": b}
            assert evaluate(A, x * y, env) == A.fusion[a][b]
            assert evaluate(A, x >> y, env) == A.arrow[a][b]
            assert evaluate(A, (x & y) | ~x, env) == A.join[A.meet[a][b]][A.neg[a]]
            assert evaluate(A, x ** 3, env) == A.fusion[A.fusion[a][a]][a]


def test_power_zero_is_identity():
    A = build("S3")
    assert all(evaluate(A, x ** 0, {"x": a}) == A.e for a in range(A.size))


def test_check_equation_witness():
    A = build("D4")
    v = check_equation(A, x * x, x)
    assert not v and v.witness is not None
    a = v.witness["x"]
    assert A.fusion[a][a] != a


def test_check_leq_and_quasi():
    A = build("C4")
    assert check_equation(A, x & y, x * y, relation="<=")
    assert check_quasi_equation(A, [le(x, E), le(y, E)], eq(x * y, x & y))
    assert not check_quasi_equation(A, [le(E, x)], eq(x, E))


def test_negation_undefined_on_dunn():
    with pytest.raises(UndefinedConnective):
        evaluate(build("T5"), ~x, {"x": 0})


@pytest.mark.parametrize("text, want", [
    ("x * (y | z)", x * (y | z)),
    ("~x -> ~y", (~x) >> (~y)),
    ("x·y ∧ z", (x * y) & z),
    ("e -> x", E >> x),
    ("f^2", F_ ** 2),
])
def test_parse_term(text, want):
    assert str(parse_term(text)) == str(want)


def test_parse_atom_round_trip():
    A = build("G1")
    at = parse_atom("x * ~x <= f")
    assert check_equation(A, at.lhs, at.rhs, relation="<=")


def test_law_registry():
    assert law_by_name("contraposition").name == "contraposition"
    with pytest.raises(KeyError):
        law_by_name("nope")
    names = {law.name for law in applicable_laws(build("T5"), True)}
    assert "meet-below-fusion" in names and "contraposition" not in names


def test_all_applicable_laws_hold_on_S3():
    A = build("S3")
    assert all(law.check(A) for law in applicable_laws(A, True))
