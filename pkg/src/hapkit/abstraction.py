"""Bracket abstraction: compile lambda sugar into k/s combinator terms.

The untyped compiler first rewrites the arithmetic function symbols into
applications of ``succ``, ``plus`` and ``times``, then applies three clauses:

    \\x. x       = s k k
    \\x. c       = k c            (c a variable other than x, or a constant)
    \\x. t1 t2   = s (\\x. t1) (\\x. t2)

No eta step and no shortcut for x-free applications, so output is stable.
"""

from __future__ import annotations

from .syntax import (
    App, Arrow, Comb, K, Lam, Num, Oracle, Plus, S, SuccOf, SyntaxError_, TApp, TConst,
    TLam, TVar, Times, Var, app, free_vars, tapp, substitute, type_of,
)

SKK = app(Comb("s"), Comb("k"), Comb("k"))


def arith_free(t):
    """Replace S, + and * by the corresponding combinator terms; lambdas are compiled."""
    from .pca import stdlib

    match t:
        case SuccOf(a):
            return App(Comb("succ"), arith_free(a))
        case Plus(a, b):
            return app(stdlib()["plus"], arith_free(a), arith_free(b))
        case Times(a, b):
            return app(stdlib()["times"], arith_free(a), arith_free(b))
        case App(f, a):
            return App(arith_free(f), arith_free(a))
        case Lam(v, body):
            return abstract_untyped(v, body)
    return t


def abstract_untyped(x: Var, t):
    """``\\x. t`` as a combinator term with the same free variables minus ``x``."""
    return _bracket(x, arith_free(t))


def _bracket(x, t):
    if t == x:
        return SKK
    match t:
        case Var() | Comb() | Num() | Oracle():
            return App(Comb("k"), t)
        case App(f, a):
            return app(Comb("s"), _bracket(x, f), _bracket(x, a))
    raise SyntaxError_(f"cannot abstract over {t!r}")


def compile_term(t):
    """Eliminate every lambda, innermost first; arithmetic outside lambdas is kept."""
    match t:
        case Lam(v, body):
            return abstract_untyped(v, compile_term(body))
        case App(f, a):
            return App(compile_term(f), compile_term(a))
        case SuccOf(a):
            return SuccOf(compile_term(a))
        case Plus(a, b):
            return Plus(compile_term(a), compile_term(b))
        case Times(a, b):
            return Times(compile_term(a), compile_term(b))
    return t


# ---------------------------------------------------------------------------
# Realizer compilation.  The literal algorithm above abstracts x-free
# subterms clause by clause, so nested lambdas grow exponentially with their
# depth.  Realizers go through a second compiler: value redexes are reduced
# first, and an x-free value t abstracts to k t.  Only values get the
# shortcut, so nothing is evaluated earlier than before under call by value.


def _spine(t):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return t, args[::-1]


def is_value(t) -> bool:
    """Terms that denote without any evaluation step: variables, constants,
    lambdas and unsaturated combinator applications to values."""
    from .pca import ARITY

    if isinstance(t, (Var, Num, Lam, Comb, Oracle)):
        return True
    head, args = _spine(t)
    if isinstance(head, Comb) and 0 < len(args) < ARITY[head.tag]:
        return all(is_value(a) for a in args)
    return False


def simplify(t, budget: int = 100_000):
    """Beta-reduce redexes with value arguments, eta-contract lambdas over
    values, and cancel projections of value pairs.  ``budget`` caps the work."""
    box = [budget]

    def go(t):
        box[0] -= 1
        if box[0] < 0:
            return t
        match t:
            case Lam(v, body):
                body = go(body)
                if isinstance(body, App) and body.arg == v and v not in free_vars(body.fun) \
                        and is_value(body.fun):
                    return body.fun
                return Lam(v, body)
            case App(f, a):
                f, a = go(f), go(a)
                if isinstance(f, Lam) and is_value(a):
                    return go(substitute(f.body, f.var, a))
                if isinstance(f, Comb) and f.tag in ("p0", "p1"):
                    head, args = _spine(a)
                    if head == Comb("p") and len(args) == 2 and all(is_value(x) for x in args):
                        return args[0] if f.tag == "p0" else args[1]
                return App(f, a)
            case SuccOf(a):
                return SuccOf(go(a))
            case Plus(a, b):
                return Plus(go(a), go(b))
            case Times(a, b):
                return Times(go(a), go(b))
        return t

    return go(t)


def _bracket_opt(x, t):
    if t == x:
        return SKK
    if x not in free_vars(t) and is_value(t):
        return App(Comb("k"), t)
    match t:
        case App(f, a):
            return app(Comb("s"), _bracket_opt(x, f), _bracket_opt(x, a))
    raise SyntaxError_(f"cannot abstract over {t!r}")


def _compile_opt(t):
    match t:
        case Lam(v, body):
            return _bracket_opt(v, arith_free(_compile_opt(body)))
        case App(f, a):
            return App(_compile_opt(f), _compile_opt(a))
        case SuccOf(a):
            return SuccOf(_compile_opt(a))
        case Plus(a, b):
            return Plus(_compile_opt(a), _compile_opt(b))
        case Times(a, b):
            return Times(_compile_opt(a), _compile_opt(b))
    return t


def compile_realizer(t):
    """Compile lambda sugar for use as a realizer: same value under call by
    value as :func:`compile_term`, but far smaller on nested lambdas."""
    return _compile_opt(simplify(t))


# ---------------------------------------------------------------------------
# Typed


def skk_at(sigma):
    return tapp(S(sigma, Arrow(sigma, sigma), sigma), K(sigma, Arrow(sigma, sigma)), K(sigma, sigma))


def abstract_typed(x: TVar, sigma, t):
    """Typed ``\\x. t`` of type ``sigma -> type_of(t)``; K and S indices are inferred."""
    if x.ty != sigma:
        raise SyntaxError_(f"variable {x} has type {x.ty}, not {sigma}")
    t = compile_typed(t)
    type_of(t)
    return _tbracket(x, t)


def _tbracket(x, t):
    if t == x:
        return skk_at(x.ty)
    match t:
        case TVar() | TConst():
            return TApp(K(type_of(t), x.ty), t)
        case TApp(f, a):
            ft = type_of(f)
            return tapp(S(x.ty, ft.dom, ft.cod), _tbracket(x, f), _tbracket(x, a))
    raise SyntaxError_(f"cannot abstract over {t!r}")


def compile_typed(t):
    match t:
        case TLam(v, body):
            return abstract_typed(v, v.ty, compile_typed(body))
        case TApp(f, a):
            return TApp(compile_typed(f), compile_typed(a))
    return t
