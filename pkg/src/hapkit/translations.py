"""Formula-to-formula interpretations.

Forcing over finite approximations of a relation F, Kleene-style and
extensional realizability for HAP and for HAω (through HRO / HEO), type
erasure, canonical realizers of arithmetical formulas, the realizer of the
axiom of choice, choice-constant multiplexing, and the prenex / Herbrand
normal forms.

Every function here is a pure syntax transformation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .abstraction import compile_realizer, compile_term
from .syntax import (
    GROUND, And, App, Arrow, Bot, Comb, CondSpec, Defined, Eq, Exists, Forall, FRel,
    Implies, IsCond, Lam, Leq, Member, Not, Num, Or, Plus, Prod, SuccOf,
    SyntaxError_, TApp, TConst, TLam, TVar, Times, TPAIR, TSUCC, TZERO, Var, all_vars,
    app, conj, desugar, forall, fresh, free_vars, is_arithmetical,
    is_quantifier_free, is_typed, lam, substitute, tapp, tnum, type_of,
)
from .text import eps_const


class TranslationError(SyntaxError_):
    pass


COND = "cond"  # domain label of quantifiers over forcing conditions
REALIZERS = "real"  # domain label of quantifiers over realizers


def p0(t):
    return App(Comb("p0"), t)


def p1(t):
    return App(Comb("p1"), t)


def dom_label(sigma) -> Optional[str]:
    """Ground-model domain label for a quantifier over objects of type sigma."""
    return None if sigma == GROUND else str(sigma)


# ---------------------------------------------------------------------------
# Forcing


def forall_ext(q: Var, p, psi: CondSpec, body):
    """``(forall q <= p) body``, a quantifier over conditions extending p."""
    return Forall(q, Implies(And(IsCond(q, psi), Leq(q, p)), body), COND)


def exists_ext(r: Var, q, psi: CondSpec, body):
    """``(exists r <= q) body``."""
    return Exists(r, And(And(IsCond(r, psi), Leq(r, q)), body), COND)


def _check_forcing_input(phi):
    match phi:
        case Eq(a, b):
            if is_typed(a) or is_typed(b):
                raise TranslationError("forcing applies to HAP formulas, not HAω")
        case Forall(v, b) | Exists(v, b):
            if isinstance(v, TVar):
                raise TranslationError("forcing applies to HAP formulas, not HAω")
            _check_forcing_input(b)
        case And(a, b) | Or(a, b) | Implies(a, b):
            _check_forcing_input(a)
            _check_forcing_input(b)


def force(phi, p: Var, psi: CondSpec):
    """``p ||- phi`` over conditions approximating F, for the parameter psi(x, y)."""
    if not is_arithmetical(psi.formula):
        raise TranslationError("the forcing parameter psi must be arithmetical")
    phi = desugar(phi, or_elim=False)
    _check_forcing_input(phi)
    return _force(phi, p, psi)


def _fresh_cond(name, *things):
    avoid = set()
    for t in things:
        avoid |= all_vars(t)
    return fresh(Var(name), avoid)


def _force(phi, p, psi):
    match phi:
        case FRel(x, y):
            q = _fresh_cond("q", phi, p)
            r = _fresh_cond("u", phi, p, q)
            return forall_ext(q, p, psi, exists_ext(r, q, psi, Member(x, y, r)))
        case Bot() | Eq() | IsCond() | Leq() | Member():
            return phi
        case And(a, b):
            return And(_force(a, p, psi), _force(b, p, psi))
        case Or(a, b):
            q = _fresh_cond("q", phi, p)
            r = _fresh_cond("u", phi, p, q)
            return forall_ext(q, p, psi, exists_ext(r, q, psi, Or(_force(a, r, psi), _force(b, r, psi))))
        case Implies(a, b):
            q = _fresh_cond("q", phi, p)
            return forall_ext(q, p, psi, Implies(_force(a, q, psi), _force(b, q, psi)))
        case Forall(x, body):
            if x == p:
                x2 = fresh(x, all_vars(phi) | {p})
                body, x = substitute(body, x, x2), x2
            q = _fresh_cond("q", phi, p)
            return Forall(x, forall_ext(q, p, psi, _force(body, q, psi)))
        case Exists(x, body):
            if x == p:
                x2 = fresh(x, all_vars(phi) | {p})
                body, x = substitute(body, x, x2), x2
            q = _fresh_cond("q", phi, p)
            r = _fresh_cond("u", phi, p, q)
            return forall_ext(q, p, psi, exists_ext(r, q, psi, Exists(x, _force(body, r, psi))))
    raise TranslationError(f"cannot force {phi!r}")


# ---------------------------------------------------------------------------
# Realizability for HAP


def _prepare(phi):
    phi = desugar(phi, or_elim=False)
    if _has_or(phi):
        raise TranslationError("disjunction must be desugared before realizability")
    return phi


def _has_or(phi) -> bool:
    match phi:
        case Or():
            return True
        case And(a, b) | Implies(a, b):
            return _has_or(a) or _has_or(b)
        case Forall(_, b) | Exists(_, b):
            return _has_or(b)
    return False


def _is_atomic(phi) -> bool:
    return isinstance(phi, (Bot, Eq, Defined, IsCond, Leq, Member))


def _avoid(*things):
    out = set()
    for t in things:
        out |= all_vars(t)
    return out


def _unshadow(phi, *terms):
    """Rename the binder of ``phi`` if it occurs free in any of ``terms``."""
    v = phi.var
    clash = any(v in free_vars(t) for t in terms)
    if not clash:
        return v, phi.body
    nv = fresh(v, _avoid(phi, *terms))
    return nv, substitute(phi.body, v, nv)


def realize_hap(x, phi):
    """``x r phi``: realizability for HAP formulas."""
    return _r(x, _prepare(phi))


def _r(x, phi):
    if _is_atomic(phi):
        return phi
    match phi:
        case And(a, b):
            return And(_r(p0(x), a), _r(p1(x), b))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(x, phi))
            xy = App(x, y)
            return Forall(y, Implies(_r(y, a), And(Defined(xy), _r(xy, b))), REALIZERS)
        case Forall():
            y, body = _unshadow(phi, x)
            xy = App(x, y)
            return Forall(y, And(Defined(xy), _r(xy, body)), phi.dom)
        case Exists(y, body):
            return _r(p1(x), substitute(body, y, p0(x)))
    raise TranslationError(f"no realizability clause for {phi!r}")


def erealize_hap(x, phi):
    """``x e phi``: extensional realizability for HAP formulas."""
    return _e(x, _prepare(phi))


def erealize_eq_hap(x, x2, phi):
    """``x = x' e phi``: equality of extensional realizers."""
    return _eeq(x, x2, _prepare(phi))


def _e(x, phi):
    if _is_atomic(phi):
        return phi
    match phi:
        case And(a, b):
            return And(_e(p0(x), a), _e(p1(x), b))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(x, phi))
            y2 = fresh(Var("y"), _avoid(x, phi) | {y})
            xy, xy2 = App(x, y), App(x, y2)
            return forall([y, y2], Implies(_eeq(y, y2, a), conj(Defined(xy), Defined(xy2), _eeq(xy, xy2, b))),
                          REALIZERS)
        case Forall():
            y, body = _unshadow(phi, x)
            xy = App(x, y)
            return Forall(y, And(Defined(xy), _e(xy, body)), phi.dom)
        case Exists(y, body):
            return _e(p1(x), substitute(body, y, p0(x)))
    raise TranslationError(f"no realizability clause for {phi!r}")


def _eeq(x, x2, phi):
    if _is_atomic(phi):
        return And(phi, Eq(x, x2))
    match phi:
        case And(a, b):
            return And(_eeq(p0(x), p0(x2), a), _eeq(p1(x), p1(x2), b))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(x, x2, phi))
            return conj(_e(x, phi), _e(x2, phi),
                        Forall(y, Implies(_e(y, a), _eeq(App(x, y), App(x2, y), b)), REALIZERS))
        case Forall():
            y, body = _unshadow(phi, x, x2)
            return conj(_e(x, phi), _e(x2, phi), Forall(y, _eeq(App(x, y), App(x2, y), body), phi.dom))
        case Exists(y, body):
            return And(_eeq(p1(x), p1(x2), substitute(body, y, p0(x))), Eq(p0(x), p0(x2)))
    raise TranslationError(f"no realizability clause for {phi!r}")


# ---------------------------------------------------------------------------
# HRO and HEO


def _as_term(x):
    return Var(x) if isinstance(x, str) else x


def hro(sigma, x):
    """``HRO_sigma(x)``: x represents an object of type sigma."""
    x = _as_term(x)
    match sigma:
        case Prod(a, b):
            return And(hro(a, p0(x)), hro(b, p1(x)))
        case Arrow(a, b):
            y = fresh(Var("y"), free_vars(x))
            xy = App(x, y)
            return Forall(y, Implies(hro(a, y), And(Defined(xy), hro(b, xy))), dom_label(a))
    return Eq(x, x)


def heo_rel(sigma, x, y):
    """``x ~_sigma y``: hereditarily extensional equality at type sigma."""
    x, y = _as_term(x), _as_term(y)
    match sigma:
        case Prod(a, b):
            return And(heo_rel(a, p0(x), p0(y)), heo_rel(b, p1(x), p1(y)))
        case Arrow(a, b):
            avoid = free_vars(x) | free_vars(y)
            z = fresh(Var("z"), avoid)
            z2 = fresh(Var("z"), avoid | {z})
            xz, xz2, yz, yz2 = App(x, z), App(x, z2), App(y, z), App(y, z2)
            body = conj(Defined(xz), Defined(xz2), Defined(yz), Defined(yz2),
                        heo_rel(b, xz, xz2), heo_rel(b, yz, yz2), heo_rel(b, xz, yz))
            return forall([z, z2], Implies(heo_rel(a, z, z2), body), dom_label(a))
    return Eq(x, y)


def heo(sigma, x):
    return heo_rel(sigma, x, x)


# ---------------------------------------------------------------------------
# Erasure


_ERASED = {"K": "k", "S": "s", "P": "p", "P0": "p0", "P1": "p1", "R": "r", "Succ": "succ", "pair": "p"}


def erase(t):
    """Forget types; HAω combinators become their HAP namesakes.

    ``E`` becomes the closed equality term and ``pair`` (the coding of type-0
    tuples) becomes ``p``, whose action on numerals is the same coding.
    """
    from .pca import stdlib

    match t:
        case TVar(name, _, index):
            return Var(name, index)
        case TConst(tag="Zero"):
            return Num(0)
        case TConst(tag="E"):
            return stdlib()["e"]
        case TConst(tag=tag):
            return Comb(_ERASED[tag])
        case TApp(f, a):
            return App(erase(f), erase(a))
        case TLam(v, body):
            return Lam(erase(v), erase(body))
    raise TranslationError(f"not a typed term: {t!r}")


def pair_definition():
    """The typed pairing constant unfolded through the recursor:
    ``pair a b = T(a + b) + b`` with ``T(n) = 0 + 1 + ... + n``."""
    from .abstraction import compile_typed

    o = GROUND
    a, b, u, v, n = (TVar(c, o) for c in "abuvn")
    plus = TLam(a, TLam(b, tapp(TConst("R", (o,)), a, TLam(u, TLam(v, TApp(TSUCC, v))), b)))
    tri = TLam(n, tapp(TConst("R", (o,)), TZERO, TLam(u, TLam(v, tapp(plus, v, TApp(TSUCC, u)))), n))
    body = tapp(plus, TApp(tri, tapp(plus, a, b)), b)
    return compile_typed(TLam(a, TLam(b, body)))


def erase_formula(phi, mode: str = "r"):
    """Atomic HAω formulas as HAP formulas: equality at type sigma becomes HAP
    equality (mode r) or ``~_sigma`` (mode e)."""
    match phi:
        case Eq(a, b):
            if mode == "e":
                return heo_rel(type_of(a), erase(a), erase(b))
            return Eq(erase(a), erase(b))
        case Bot():
            return phi
    raise TranslationError(f"not an atomic HAω formula: {phi!r}")


# ---------------------------------------------------------------------------
# Realizability for HAω


def _erase_var(v):
    return Var(v.name, v.index)


def _omega_binder(phi, *terms):
    v = phi.var
    uv = _erase_var(v)
    body = phi.body
    if any(uv in free_vars(t) for t in terms):
        nv = fresh(v, all_vars(phi) | {TVar(w.name, v.ty, w.index) for t in terms for w in free_vars(t)})
        body = substitute(body, v, nv)
        v, uv = nv, _erase_var(nv)
    return v, uv, body


def realize_omega(x, phi, mode: str = "r"):
    """``x r phi`` (mode r) or ``x e phi`` (mode e) for a HAω formula, as a HAP formula."""
    if mode not in ("r", "e"):
        raise TranslationError(f"unknown mode {mode!r}")
    phi = _prepare(phi)
    x = _as_term(x)
    return _ro(x, phi) if mode == "r" else _eo(x, phi)


def erealize_eq_omega(x, x2, phi):
    return _eoeq(_as_term(x), _as_term(x2), _prepare(phi))


# The HAω clauses work on the typed formula and substitute untyped terms for
# erased variables only once the body has been translated.


def _ro(x, phi):
    if isinstance(phi, (Bot, Eq)):
        return erase_formula(phi, "r")
    match phi:
        case And(a, b):
            return And(_ro(p0(x), a), _ro(p1(x), b))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(x) | _erased_vars(phi))
            xy = App(x, y)
            return Forall(y, Implies(_ro(y, a), And(Defined(xy), _ro(xy, b))), REALIZERS)
        case Forall():
            v, y, body = _omega_binder(phi, x)
            xy = App(x, y)
            return Forall(y, Implies(hro(v.ty, y), And(Defined(xy), _ro(xy, body))), dom_label(v.ty))
        case Exists():
            v, y, body = _omega_binder(phi, x)
            return And(hro(v.ty, p0(x)), substitute(_ro(p1(x), body), y, p0(x)))
    raise TranslationError(f"no realizability clause for {phi!r}")


def _eo(x, phi):
    if isinstance(phi, (Bot, Eq)):
        return erase_formula(phi, "e")
    match phi:
        case And(a, b):
            return And(_eo(p0(x), a), _eo(p1(x), b))
        case Implies(a, b):
            avoid = _avoid(x) | _erased_vars(phi)
            y = fresh(Var("y"), avoid)
            y2 = fresh(Var("y"), avoid | {y})
            xy, xy2 = App(x, y), App(x, y2)
            return forall([y, y2], Implies(_eoeq(y, y2, a), conj(Defined(xy), Defined(xy2), _eoeq(xy, xy2, b))),
                          REALIZERS)
        case Forall():
            v, y, body = _omega_binder(phi, x)
            y2 = fresh(y, _avoid(x) | _erased_vars(phi) | {y})
            xy, xy2 = App(x, y), App(x, y2)
            return forall([y, y2], Implies(heo_rel(v.ty, y, y2),
                                           conj(Defined(xy), Defined(xy2), _eoeq(xy, xy2, body))),
                          dom_label(v.ty))
        case Exists():
            v, y, body = _omega_binder(phi, x)
            return And(heo(v.ty, p0(x)), substitute(_eo(p1(x), body), y, p0(x)))
    raise TranslationError(f"no realizability clause for {phi!r}")


def _eoeq(x, x2, phi):
    if isinstance(phi, (Bot, Eq)):
        return And(erase_formula(phi, "e"), Eq(x, x2))
    match phi:
        case And(a, b):
            return And(_eoeq(p0(x), p0(x2), a), _eoeq(p1(x), p1(x2), b))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(x, x2) | _erased_vars(phi))
            return conj(_eo(x, phi), _eo(x2, phi),
                        Forall(y, Implies(_eo(y, a), _eoeq(App(x, y), App(x2, y), b)), REALIZERS))
        case Forall():
            v, y, body = _omega_binder(phi, x, x2)
            return conj(_eo(x, phi), _eo(x2, phi),
                        Forall(y, Implies(heo(v.ty, y), _eoeq(App(x, y), App(x2, y), body)), dom_label(v.ty)))
        case Exists():
            v, y, body = _omega_binder(phi, x, x2)
            return And(substitute(_eoeq(p1(x), p1(x2), body), y, p0(x)), heo_rel(v.ty, p0(x), p0(x2)))
    raise TranslationError(f"no realizability clause for {phi!r}")


def _erased_vars(phi):
    return {Var(v.name, v.index) for v in all_vars(phi)}


# ---------------------------------------------------------------------------
# Realizer terms


@dataclass(frozen=True)
class RealizerTerm:
    term: object
    mode: str = "r"
    source: str = ""


def tuple_term(vs: Sequence):
    """Iterated-pair coding of a tuple of terms, matching :func:`pca.tuple_value`."""
    vs = list(vs)
    if not vs:
        return Num(0)
    out = vs[-1]
    for v in reversed(vs[:-1]):
        out = app(Comb("p"), v, out)
    return out


def canonical_order(phi) -> list:
    """Free variables sorted by (name, index)."""
    return sorted(free_vars(phi), key=lambda v: (v.name, v.index))


def canonical_realizer(phi, params: Optional[Sequence[Var]] = None, mode: str = "r") -> RealizerTerm:
    """The canonical realizer ``j_phi`` of an arithmetical formula, compiled.

    ``j_phi x1 ... xn`` realizes phi where x1..xn are ``params`` (default: the
    free variables in canonical order).  Existential steps call the choice
    constant of the body, applied to the coded parameter tuple.
    """
    phi = desugar(phi)
    if not is_arithmetical(phi):
        raise TranslationError("canonical realizers exist for arithmetical formulas only")
    if params is None:
        params = canonical_order(phi)
    params = list(params)
    if not free_vars(phi) <= set(params):
        raise TranslationError("params must include every free variable")
    return RealizerTerm(compile_realizer(_j(phi, params)), mode, "canonical j")


def _j(phi, xs):
    """Lambda-sugar for j_phi relative to the parameter list xs."""
    if _is_atomic(phi):
        return lam(xs, Num(0))
    match phi:
        case And(a, b):
            return lam(xs, app(Comb("p"), app(_jc(a, xs), *xs), app(_jc(b, xs), *xs)))
        case Implies(a, b):
            y = fresh(Var("y"), _avoid(phi, *xs))
            return lam(xs, Lam(y, app(_jc(b, xs), *xs)))
        case Forall(y, body):
            if y in xs:
                y2 = fresh(y, _avoid(phi, *xs))
                body, y = substitute(body, y, y2), y2
            inner = xs + [y]
            return lam(xs, Lam(y, app(_jc(body, inner), *inner)))
        case Exists(y, body):
            if y in xs:
                y2 = fresh(y, _avoid(phi, *xs))
                body, y = substitute(body, y, y2), y2
            eps = App(eps_const(body, y, tuple(xs)), tuple_term(xs))
            return lam(xs, app(Comb("p"), eps, app(_jc(body, xs + [y]), *xs, eps)))
    raise TranslationError(f"no canonical realizer clause for {phi!r}")


def _jc(phi, xs):
    # left as lambda sugar; the applications to xs reduce away before compiling
    return _j(phi, xs)


def ac_realizer(sigma=GROUND, tau=GROUND, params: Sequence[Var] = (), mode: str = "r") -> RealizerTerm:
    """``\\z. \\u. p (\\x. p0 (u x)) (\\x. p1 (u x))``; the types only document the instance."""
    u, x = Var("u"), Var("x")
    avoid = set(params)
    u, x = fresh(u, avoid), fresh(x, avoid)
    body = Lam(u, app(Comb("p"), Lam(x, p0(App(u, x))), Lam(x, p1(App(u, x)))))
    return RealizerTerm(compile_term(lam(params, body)), mode, f"AC realizer at {sigma}, {tau}")


def ac_instance(sigma, tau, phi, x: TVar, y: TVar, f: Optional[TVar] = None):
    """``forall x. exists y. phi -> exists f. forall x. phi[f x / y]``."""
    if f is None:
        f = fresh(TVar("f", Arrow(sigma, tau)), all_vars(phi) | {x, y})
    return Implies(Forall(x, Exists(y, phi)), Exists(f, Forall(x, substitute(phi, y, TApp(f, x)))))


# ---------------------------------------------------------------------------
# Multiplexing choice constants


def pair_equation(code, a, b):
    """``code`` is the Cantor code of (a, b), stated without division:
    ``code + code = (a + b) * S(a + b) + (b + b)``."""
    s = Plus(a, b)
    return Eq(Plus(code, code), Plus(Times(s, SuccOf(s)), Plus(b, b)))


def epsilon_multiplex(parts: Sequence[tuple]):
    """Combine ``(phi_i, x_i, y_i)`` into one formula phi(x, y) such that the
    choice constant for phi on the code of (i, a) behaves like the one for phi_i on a.

    Returns ``(phi, x, y)``.  Projections are arithmetical: each conjunct reads
    ``forall a b. (x is the code of (a, b)) -> (a = i -> phi_i(b, y))``.
    """
    if not parts:
        raise TranslationError("multiplexing needs at least one formula")
    avoid = set()
    for phi, _, _ in parts:
        if not is_arithmetical(phi):
            raise TranslationError("multiplexed formulas must be arithmetical")
        avoid |= all_vars(phi)
    x = fresh(Var("x"), avoid)
    y = fresh(Var("y"), avoid | {x})
    a = fresh(Var("a"), avoid | {x, y})
    b = fresh(Var("b"), avoid | {x, y, a})
    conjuncts = []
    for i, (phi, xi, yi) in enumerate(parts, start=1):
        inst = _rename_pair(phi, xi, yi, b, y)
        conjuncts.append(Forall(a, Forall(b, Implies(pair_equation(x, a, b), Implies(Eq(a, Num(i)), inst)))))
    return conj(*conjuncts), x, y


def _rename_pair(phi, xi, yi, b, y):
    from .syntax import substitute_many

    return substitute_many(phi, {xi: b, yi: y})


# ---------------------------------------------------------------------------
# Prenex and Herbrand normal forms


def _rename_apart(phi, avoid: set):
    """Give every bound variable a name not in ``avoid`` (which is updated)."""
    match phi:
        case Forall(v, body) | Exists(v, body):
            nv = v if v not in avoid else fresh(v, avoid | all_vars(body))
            avoid.add(nv)
            body = substitute(body, v, nv) if nv != v else body
            return type(phi)(nv, _rename_apart(body, avoid), phi.dom)
        case And(a, b) | Or(a, b) | Implies(a, b):
            return type(phi)(_rename_apart(a, avoid), _rename_apart(b, avoid))
        case Not(a):
            return Not(_rename_apart(a, avoid))
    return phi


def _flip(prefix):
    return [(Exists if q is Forall else Forall, v, d) for q, v, d in prefix]


def _pull(phi):
    match phi:
        case Forall(v, body) | Exists(v, body):
            pre, m = _pull(body)
            return [(type(phi), v, phi.dom)] + pre, m
        case Not(a):
            pre, m = _pull(a)
            return _flip(pre), Not(m)
        case And(a, b) | Or(a, b):
            pa, ma = _pull(a)
            pb, mb = _pull(b)
            return pa + pb, type(phi)(ma, mb)
        case Implies(a, b):
            pa, ma = _pull(a)
            pb, mb = _pull(b)
            return _flip(pa) + pb, Implies(ma, mb)
    return [], phi


def prenex(phi):
    """A classically equivalent prenex form (bound variables renamed apart)."""
    phi = desugar(phi, or_elim=False)
    avoid = set(free_vars(phi))
    renamed = _rename_apart(phi, avoid)
    prefix, matrix = _pull(renamed)
    out = matrix
    for q, v, d in reversed(prefix):
        out = q(v, out, d)
    return out


def _to_typed(t):
    match t:
        case Var(name, index):
            return TVar(name, GROUND, index)
        case Num(n):
            return tnum(n)
        case SuccOf(a):
            return TApp(TSUCC, _to_typed(a))
        case TVar() | TConst() | TApp():
            return t
    raise TranslationError(f"{t!r} has no HAω counterpart")


def _typed_formula(phi):
    match phi:
        case Eq(a, b):
            return Eq(_to_typed(a), _to_typed(b))
        case Bot():
            return phi
        case And(a, b) | Or(a, b) | Implies(a, b):
            return type(phi)(_typed_formula(a), _typed_formula(b))
        case Not(a):
            return Not(_typed_formula(a))
        case Forall(v, b) | Exists(v, b):
            tv = _to_typed(v) if isinstance(v, Var) else v
            return type(phi)(tv, _typed_formula(b))
    raise TranslationError(f"{phi!r} has no HAω counterpart")


def typed_tuple(vs):
    vs = list(vs)
    out = vs[-1]
    for v in reversed(vs[:-1]):
        out = tapp(TPAIR, v, out)
    return out


def herbrand_nf(phi):
    """Herbrand normal form of ``exists x1 forall y1 ... exists xn forall yn. qf``:
    ``forall f1..fn exists x1..xn. qf[f1 x1 / y1, ..., fn <x1..xn> / yn]``."""
    phi = _typed_formula(phi)
    xs, ys = [], []
    body = phi
    while isinstance(body, Exists):
        x = body.var
        if not isinstance(body.body, Forall):
            raise TranslationError("expected exists x forall y ... alternation")
        y = body.body.var
        if x.ty != GROUND or y.ty != GROUND:
            raise TranslationError("Herbrand normal form needs type-0 quantifiers")
        xs.append(x)
        ys.append(y)
        body = body.body.body
    if not is_quantifier_free(body):
        raise TranslationError("matrix must be quantifier-free after exists/forall pairs")
    avoid = set(all_vars(phi))
    fs = []
    for i in range(len(xs)):
        f = fresh(TVar(f"f{i + 1}", Arrow(GROUND, GROUND)), avoid)
        avoid.add(f)
        fs.append(f)
    matrix = body
    for i, (y, f) in enumerate(zip(ys, fs)):
        matrix = substitute(matrix, y, TApp(f, typed_tuple(xs[: i + 1])))
    out = matrix
    for x in reversed(xs):
        out = Exists(x, out)
    for f in reversed(fs):
        out = Forall(f, out)
    return out


__all__ = [
    "COND", "REALIZERS", "RealizerTerm", "TranslationError", "ac_instance", "ac_realizer",
    "canonical_order", "canonical_realizer", "epsilon_multiplex", "erase", "erase_formula",
    "erealize_eq_hap", "erealize_eq_omega", "erealize_hap", "exists_ext", "force", "forall_ext",
    "heo", "heo_rel", "herbrand_nf", "hro", "pair_definition", "pair_equation", "prenex",
    "realize_hap", "realize_omega", "tuple_term",
]
