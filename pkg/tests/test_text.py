import pytest
from hypothesis import given, settings, strategies as st

from hapkit.syntax import (
    And, App, Comb, Eq, Exists, Forall, Implies, Lam, Not, Num, Or, Plus, SuccOf, Times, Var, alpha_eq,
)
from hapkit.text import ParseError, parse_formula, parse_term, parse_type, parse_typed_term, show

x, y = Var("x"), Var("y")


def test_application_associates_left():
    assert parse_term("k x y") == App(App(Comb("k"), x), y)


def test_lambda_sugar_node():
    assert parse_term(r"\x. x") == Lam(x, x)


def test_quantified_formula():
    n, m = Var("n"), Var("m")
    assert parse_formula("forall n. exists m. m = n + n") == Forall(n, Exists(m, Eq(m, Plus(n, n))))


def test_negation_binds_an_atom():
    assert parse_formula("~0 = S x") == Not(Eq(Num(0), SuccOf(x)))


def test_indexed_variables():
    assert parse_term("x'2") == Var("x", 2)
    assert show(Var("x", 2)) == "x'2"


def test_types():
    t = parse_type("0->0->0")
    assert str(t) == "0->0->0"
    assert str(parse_type("(0->0)->0*0")) == "(0->0)->0*0"


@pytest.mark.parametrize("src, line, col", [
    ("forall n. n = ", 1, 15),
    ("k (x\n y", 2, 3),
    ("x = = y", 1, 5),
])
def test_parse_errors_carry_position(src, line, col):
    with pytest.raises(ParseError) as info:
        parse_formula(src) if "=" in src or "forall" in src else parse_term(src)
    assert (info.value.line, info.value.col) == (line, col)


def test_typed_terms_need_known_types():
    with pytest.raises(ParseError):
        parse_typed_term("Succ y")


@pytest.mark.parametrize("src", [
    r"\x y. s (k x) y",
    "p0 (p 2 9)",
    "eps[y; x | y = S x] 3",
    "S (x + y * 2)",
])
def test_term_round_trip(src):
    t = parse_term(src)
    assert parse_term(show(t)) == t


@pytest.mark.parametrize("src", [
    "forall n. n = 0 | exists m. n = S m",
    "~~(x = x) -> bot",
    "!(k 1 2) & x ~= y",
    "F(x, y) -> Cond[a, b: b = S a](x)",
    "(x, y) in z & z <= x",
])
def test_formula_round_trip(src):
    f = parse_formula(src)
    assert alpha_eq(parse_formula(show(f)), f)


@pytest.mark.parametrize("src", [
    "forall f:0->0. exists x:0. x = f x",
    "forall x:0. R[0] x (K[0,0]) 0 = x",
    "exists g:0*0. P0[0,0] g = 0",
])
def test_typed_round_trip(src):
    f = parse_formula(src, typed=True)
    assert alpha_eq(parse_formula(show(f), typed=True), f)


names = st.sampled_from(["x", "y", "z", "u"])
leaf = st.one_of(names.map(Var), st.integers(0, 12).map(Num),
                 st.sampled_from(["k", "s", "p", "p0", "p1", "succ", "r"]).map(Comb))


def _grow(sub):
    return st.one_of(
        st.tuples(sub, sub).map(lambda ab: App(*ab)),
        st.tuples(sub, sub).map(lambda ab: Plus(*ab)),
        st.tuples(sub, sub).map(lambda ab: Times(*ab)),
        sub.map(SuccOf),
        st.tuples(names, sub).map(lambda vb: Lam(Var(vb[0]), vb[1])),
    )


terms = st.recursive(leaf, _grow, max_leaves=10)


def _fgrow(sub):
    return st.one_of(
        st.tuples(sub, sub).map(lambda ab: And(*ab)),
        st.tuples(sub, sub).map(lambda ab: Or(*ab)),
        st.tuples(sub, sub).map(lambda ab: Implies(*ab)),
        sub.map(Not),
        st.tuples(names, sub).map(lambda vb: Forall(Var(vb[0]), vb[1])),
        st.tuples(names, sub).map(lambda vb: Exists(Var(vb[0]), vb[1])),
    )


formulas = st.recursive(st.tuples(terms, terms).map(lambda ab: Eq(*ab)), _fgrow, max_leaves=6)


@given(terms)
@settings(max_examples=300, deadline=None)
def test_print_parse_terms(t):
    assert parse_term(show(t)) == t


@given(formulas)
@settings(max_examples=300, deadline=None)
def test_print_parse_formulas(f):
    assert alpha_eq(parse_formula(show(f)), f)
