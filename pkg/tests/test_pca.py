import random

import pytest
from hypothesis import given, settings, strategies as st

from hapkit.pca import (
    Defined, Numeral, OutOfFuel, PairV, PartialApp, Undefined, apply_values, decode_seq, dialogue_apply,
    encode_seq, eval_term, is_seq, pair, proj0, proj1, quote, seq_concat, seq_prefix, stdlib, value_of,
)
from hapkit.syntax import App, Bot, Comb, Num, Var, app, substitute
from hapkit.text import eps_const, parse_term

N = Numeral


def ev(src, **kw):
    return eval_term(parse_term(src), **kw)


@pytest.mark.parametrize("src, want", [
    ("k 3 7", 3),
    ("p0 (p 2 9)", 2),
    ("p1 (p 2 9)", 9),
    ("s k k 5", 5),
    ("r 4 k 0", 4),
    ("succ 6", 7),
    ("3 + 4", 7),
    ("3 * 4", 12),
    ("3 * 0", 0),
])
def test_eval_examples(src, want):
    assert ev(src) == Defined(N(want))


def test_declining_oracle_propagates_through_strict_application():
    e = eps_const(Bot(), Var("y"), (Var("x"),))
    t = app(Comb("k"), App(e, Num(0)), Num(1))
    out = eval_term(t, oracles={})
    assert isinstance(out, Undefined) and "declined" in out.reason


def test_arithmetic_is_strict_on_numerals():
    assert isinstance(ev("S k"), Undefined)
    assert isinstance(ev("k + 1"), Undefined)


def test_nontermination_is_out_of_fuel():
    omega = r"(\x. x x) (\x. x x)"
    assert isinstance(ev(omega, fuel=500), OutOfFuel)


@pytest.mark.parametrize("name, args, want", [
    ("plus", (2, 3), 5),
    ("times", (4, 5), 20),
    ("times", (4, 0), 0),
    ("pred", (6,), 5),
    ("pred", (0,), 0),
    ("monus", (3, 5), 0),
    ("monus", (9, 5), 4),
    ("sg", (0,), 0),
    ("sg", (4,), 1),
    ("e", (4, 4), 0),
    ("e", (4, 5), 1),
    ("e", (7, 2), 1),
])
def test_stdlib_arithmetic(name, args, want):
    t = app(stdlib()[name], *(Num(a) for a in args))
    assert eval_term(t) == Defined(N(want))


def test_stdlib_booleans_and_cases():
    lib = stdlib()
    assert eval_term(app(lib["d"], lib["top"], Num(8), Num(9))) == Defined(N(8))
    assert eval_term(app(lib["d"], lib["bot"], Num(8), Num(9))) == Defined(N(9))


def test_equality_test_exhaustive():
    e = value_of("e")
    for a in range(10):
        for b in range(10):
            f = apply_values(e, N(a)).value
            out = apply_values(f, N(b))
            assert out == Defined(N(0 if a == b else 1))


# -- pairing


values = st.recursive(
    st.integers(0, 50).map(N) | st.sampled_from(["k", "s", "p", "succ"]).map(lambda c: PartialApp(Comb(c), ())),
    lambda sub: st.tuples(sub, sub).map(lambda ab: pair(*ab)),
    max_leaves=6,
)


@given(values, values)
@settings(max_examples=200, deadline=None)
def test_projections_invert_pair(a, b):
    v = pair(a, b)
    assert proj0(v) == a and proj1(v) == b


@given(values)
@settings(max_examples=200, deadline=None)
def test_pairing_is_surjective(v):
    assert pair(proj0(v), proj1(v)) == v


@given(values)
@settings(max_examples=100, deadline=None)
def test_quote_round_trip(v):
    assert eval_term(quote(v)) == Defined(v)


def test_pair_shapes():
    assert isinstance(pair(N(1), N(2)), Numeral)
    k = PartialApp(Comb("k"), ())
    assert pair(k, N(0)) == k
    assert isinstance(pair(k, N(1)), PairV)


# -- sequences


def test_sequence_examples():
    assert decode_seq(encode_seq([])) == []
    b, u0, u1, u2 = N(4), N(10), N(11), N(12)
    assert seq_concat(encode_seq([b]), encode_seq([u0])) == encode_seq([b, u0])
    assert seq_prefix(encode_seq([u0, u1, u2]), 2) == encode_seq([u0, u1])


@given(st.lists(values, max_size=5))
@settings(max_examples=150, deadline=None)
def test_decode_inverts_encode(vs):
    assert decode_seq(encode_seq(vs)) == vs


@given(st.lists(values, max_size=4), st.lists(values, max_size=4))
@settings(max_examples=150, deadline=None)
def test_encode_injective(a, b):
    if a != b:
        assert encode_seq(a) != encode_seq(b)


def test_non_sequences_rejected():
    assert not is_seq(PartialApp(Comb("k"), ()))
    with pytest.raises(ValueError):
        decode_seq(PartialApp(Comb("s"), ()))


# -- dialogues


def _val(src):
    out = ev(src)
    assert isinstance(out, Defined)
    return out.value


def test_empty_dialogue():
    a = _val(r"\w. p k 42")
    assert dialogue_apply(a, N(3), lambda v: None) == Defined(N(42))


def one_query_program():
    """Stage 0 asks about b; stage 1 returns the first answer."""
    src = r"\w. r (p (\x y. y) (p0 (p1 w))) (\i acc. p k (p0 (p1 (p1 w)))) (pred (p0 w))"
    t = substitute(parse_term(src), Var("pred"), stdlib()["pred"])
    out = eval_term(t)
    assert isinstance(out, Defined)
    return out.value


def test_one_query_dialogue():
    a = one_query_program()
    succ = lambda v: N(v.n + 1) if isinstance(v, Numeral) else None  # noqa: E731
    assert dialogue_apply(a, N(6), succ) == Defined(N(7))
    assert isinstance(dialogue_apply(a, N(6), lambda v: None), Undefined)


def test_pure_application_wraps_into_dialogue():
    rng = random.Random(7)
    plus2 = _val(r"\x. x + 2")
    wrap = _val(r"\w. p k ((\x. x + 2) (p0 (p1 w)))")
    for _ in range(20):
        b = N(rng.randrange(100))
        assert dialogue_apply(wrap, b, lambda v: None) == apply_values(plus2, b)


# -- determinism, fuel monotonicity, strictness


def test_fuel_monotone_and_deterministic():
    t = parse_term(r"r 0 (\u v. v + u) 12")
    first = eval_term(t)
    assert first == eval_term(t)
    steps = None
    for fuel in range(1, 2000, 37):
        out = eval_term(t, fuel=fuel)
        if isinstance(out, Defined):
            steps = steps or fuel
            assert out == first
        else:
            assert steps is None


def test_strictness_of_application():
    # an application evaluates only if both sides do
    t = app(Comb("k"), Num(1), App(Comb("succ"), Comb("k")))
    assert isinstance(eval_term(t), Undefined)
