import pytest
from hypothesis import given, settings, strategies as st

from hapkit.syntax import (
    GROUND, And, App, Arrow, Bot, Comb, Defined, Eq, Exists, Forall, Implies, Num, Or, Prod, R, TApp,
    TSUCC, TVar, TZERO, TypeError_, Var, alpha_eq, classify, desugar, free_vars, K, substitute, type_of,
)
from hapkit.text import parse_formula, parse_term

x, y, m, n = Var("x"), Var("y"), Var("m"), Var("n")


def test_free_vars_examples():
    assert free_vars(Forall(n, Eq(n, m))) == {m}
    assert free_vars(App(Comb("k"), x)) == {x}
    assert free_vars(parse_term("s k k")) == frozenset()


def test_substitute_examples():
    assert substitute(Eq(x, x), x, Num(0)) == Eq(Num(0), Num(0))
    out = substitute(Forall(x, Eq(x, y)), y, x)
    assert isinstance(out, Forall) and out.var != x
    assert out.var.name == "x" and out.var.index == 1
    assert out.body == Eq(out.var, x)
    assert substitute(parse_term("p0 x"), x, parse_term("p 2 9")) == parse_term("p0 (p 2 9)")


def test_type_of_examples():
    assert type_of(K(GROUND, GROUND)) == Arrow(GROUND, Arrow(GROUND, GROUND))
    r0 = Arrow(GROUND, Arrow(Arrow(GROUND, Arrow(GROUND, GROUND)), Arrow(GROUND, GROUND)))
    assert type_of(R(GROUND)) == r0
    assert type_of(TApp(TSUCC, TZERO)) == GROUND


def test_type_of_reports_offending_subterm():
    bad = TApp(TZERO, TZERO)
    with pytest.raises(TypeError_) as info:
        type_of(TApp(TSUCC, bad))
    assert info.value.args and "non-function" in str(info.value)


def test_desugar_or():
    phi, psi = parse_formula("x = 0"), parse_formula("x = 1")
    out = desugar(Or(phi, psi))
    assert isinstance(out, Exists)
    k = out.var
    assert out.body == And(Implies(Eq(k, Num(0)), phi), Implies(Implies(Eq(k, Num(0)), Bot()), psi))


def test_desugar_defined_and_idempotent():
    t = parse_term("k 1 2")
    assert desugar(Defined(t)) == Eq(t, t)
    f = parse_formula("forall n. n = 0 | ~(n = 0) -> !(S n)")
    once = desugar(f)
    assert desugar(once) == once
    assert free_vars(once) == free_vars(f)


def test_classify_examples():
    assert classify(parse_formula("forall n. exists m. m = n + n")) == "arithmetical"
    f = TVar("f", Arrow(GROUND, GROUND))
    g = TVar("g", Arrow(GROUND, GROUND))
    assert classify(Eq(f, g)) == "other"
    assert classify(parse_formula("x:0 = 0 & y:0 = 0", typed=True)) == "quantifier_free"


def test_product_type_prints():
    assert str(Prod(GROUND, GROUND)) == "0*0"
    assert str(Arrow(Arrow(GROUND, GROUND), GROUND)) == "(0->0)->0"


# -- properties over generated terms

names = st.sampled_from(["x", "y", "z"])
leaf = st.one_of(names.map(Var), st.integers(0, 5).map(Num), st.sampled_from(["k", "s", "p"]).map(Comb))
terms = st.recursive(leaf, lambda sub: st.tuples(sub, sub).map(lambda ab: App(*ab)), max_leaves=8)


def formulas_over(ts):
    atom = st.tuples(ts, ts).map(lambda ab: Eq(*ab))

    def grow(sub):
        return st.one_of(
            st.tuples(sub, sub).map(lambda ab: And(*ab)),
            st.tuples(sub, sub).map(lambda ab: Implies(*ab)),
            st.tuples(names, sub).map(lambda vb: Forall(Var(vb[0]), vb[1])),
            st.tuples(names, sub).map(lambda vb: Exists(Var(vb[0]), vb[1])),
        )

    return st.recursive(atom, grow, max_leaves=5)


formulas = formulas_over(terms)


@given(formulas, names, terms)
@settings(max_examples=150, deadline=None)
def test_substitution_removes_variable(phi, v, s):
    v = Var(v)
    if v in free_vars(s):
        return
    assert v not in free_vars(substitute(phi, v, s))


@given(formulas)
@settings(max_examples=150, deadline=None)
def test_alpha_eq_reflexive_and_desugar_idempotent(phi):
    assert alpha_eq(phi, phi)
    d = desugar(phi)
    assert desugar(d) == d


@given(formulas, names, terms)
@settings(max_examples=100, deadline=None)
def test_substitution_respects_alpha(phi, v, s):
    # renaming a bound variable apart does not change the substitution result up to alpha
    if not isinstance(phi, (Forall, Exists)):
        return
    w = Var("w", 7)
    if w in free_vars(phi.body):
        return
    renamed = type(phi)(w, substitute(phi.body, phi.var, w))
    assert alpha_eq(phi, renamed)
    assert alpha_eq(substitute(phi, Var(v), s), substitute(renamed, Var(v), s))


def test_type_of_deterministic():
    t = TApp(TApp(K(GROUND, GROUND), TZERO), TVar("y", GROUND))
    assert type_of(t) == type_of(t) == GROUND
