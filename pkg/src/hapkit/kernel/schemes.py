"""The catalogue of axiom schemes and inference rules.

Each axiom scheme turns a binding of its metavariables into a formula; each
rule turns premise formulas (plus bindings) into a conclusion or rejects them.
Languages:

* ``hap``      HAP over the logic of partial terms
* ``hap-eps``  HAP with choice constants for arithmetical formulas
* ``iha``      intensional finite-type arithmetic with AC (total logic)
* ``eha``      extensional finite-type arithmetic with AC (total logic)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from ..syntax import (
    GROUND, And, App, Arrow, Bot, Comb, Defined, Eq, Exists, Forall, Implies, Num, Oracle,
    Or, Plus, Prod, SuccOf, SyntaxError_, TApp, TVar, Times, Var, alpha_eq, forall,
    free_vars, is_arithmetical, is_quantifier_free, substitute, tapp, type_of, TSUCC, TZERO,
    K, S, P, P0, P1, R, E,
)
from ..text import eps_const, parse_formula
from ..translations import canonical_order, tuple_term

LANGS = ("hap", "hap-eps", "iha", "eha")
HAP_LANGS = frozenset({"hap", "hap-eps"})
OMEGA_LANGS = frozenset({"iha", "eha"})
ALL = frozenset(LANGS)


class SchemeError(SyntaxError_):
    pass


def is_typed_lang(lang: str) -> bool:
    if lang not in LANGS:
        raise SchemeError(f"unknown language {lang!r}; expected one of {', '.join(LANGS)}")
    return lang in OMEGA_LANGS


@dataclass(frozen=True)
class Scheme:
    id: str
    kind: str  # "axiom" or "rule"
    langs: frozenset
    metas: tuple  # ((name, kind), ...); kind in formula, term, var, type
    build: Callable = field(compare=False)
    group: str = ""
    doc: str = ""
    premises: int = 0

    def meta_kind(self, name: str) -> Optional[str]:
        return dict(self.metas).get(name)


SCHEMES: dict[str, Scheme] = {}


def _scheme(id, kind, langs, metas, group, doc, premises=0):
    def deco(fn):
        SCHEMES[id] = Scheme(id, kind, frozenset(langs), tuple(metas), fn, group, doc, premises)
        return fn

    return deco


def get_scheme(id: str, lang: str) -> Scheme:
    sc = SCHEMES.get(id)
    if sc is None:
        raise SchemeError(f"unknown scheme id {id!r}")
    if lang not in sc.langs:
        raise SchemeError(f"scheme {id!r} is not available in language {lang}")
    return sc


# ---------------------------------------------------------------------------
# Helpers


@dataclass
class Ctx:
    lang: str
    b: dict  # bindings

    @property
    def typed(self) -> bool:
        return self.lang in OMEGA_LANGS

    def get(self, name):
        if name not in self.b:
            raise SchemeError(f"missing binding for metavariable {name}")
        return self.b[name]

    def ty(self, name):
        return self.b.get(name, GROUND)

    def var(self, name, ty=GROUND, index=0):
        return TVar(name, ty, index) if self.typed else Var(name, index)

    def defined(self, t):
        """``t!`` in the partial logic; nothing in the total one."""
        return None if self.typed else Defined(t)


def _and_opt(a, b):
    return a if b is None else And(a, b)


@lru_cache(maxsize=None)
def _f(src):
    return parse_formula(src)


def _zero(ctx):
    return TZERO if ctx.typed else Num(0)


def _succ(ctx, t):
    return TApp(TSUCC, t) if ctx.typed else SuccOf(t)


def _check_var(ctx, v, name="x"):
    if ctx.typed != isinstance(v, TVar) or not isinstance(v, (Var, TVar)):
        raise SchemeError(f"binding {name} must be a {'typed' if ctx.typed else 'HAP'} variable")
    return v


# ---------------------------------------------------------------------------
# Logic (LPT for HAP; its total specialization for the typed languages)

PHI = ("phi", "formula")
PSI = ("psi", "formula")
CHI = ("chi", "formula")


@_scheme("id", "axiom", ALL, [PHI], "logic", "phi -> phi")
def _id(ctx):
    phi = ctx.get("phi")
    return Implies(phi, phi)


@_scheme("conj-elim-l", "axiom", ALL, [PHI, PSI], "logic", "phi & psi -> phi")
def _cel(ctx):
    return Implies(And(ctx.get("phi"), ctx.get("psi")), ctx.get("phi"))


@_scheme("conj-elim-r", "axiom", ALL, [PHI, PSI], "logic", "phi & psi -> psi")
def _cer(ctx):
    return Implies(And(ctx.get("phi"), ctx.get("psi")), ctx.get("psi"))


@_scheme("disj-intro-l", "axiom", ALL, [PHI, PSI], "logic", "phi -> phi | psi")
def _dil(ctx):
    return Implies(ctx.get("phi"), Or(ctx.get("phi"), ctx.get("psi")))


@_scheme("disj-intro-r", "axiom", ALL, [PHI, PSI], "logic", "psi -> phi | psi")
def _dir(ctx):
    return Implies(ctx.get("psi"), Or(ctx.get("phi"), ctx.get("psi")))


@_scheme("efq", "axiom", ALL, [PHI], "logic", "bot -> phi")
def _efq(ctx):
    return Implies(Bot(), ctx.get("phi"))


def _inst_check(ctx):
    x, t = _check_var(ctx, ctx.get("x")), ctx.get("t")
    if ctx.typed and type_of(t) != x.ty:
        raise SchemeError(f"term {t} has type {type_of(t)}, variable {x} has type {x.ty}")
    return x, t


@_scheme("forall-elim", "axiom", ALL, [("x", "var"), PHI, ("t", "term")], "logic",
         "forall x. phi & t! -> phi[t/x]   (total logic: no t!)")
def _fe(ctx):
    x, t = _inst_check(ctx)
    phi = ctx.get("phi")
    return Implies(_and_opt(Forall(x, phi), ctx.defined(t)), substitute(phi, x, t))


@_scheme("exists-intro", "axiom", ALL, [("x", "var"), PHI, ("t", "term")], "logic",
         "phi[t/x] & t! -> exists x. phi   (total logic: no t!)")
def _ei(ctx):
    x, t = _inst_check(ctx)
    phi = ctx.get("phi")
    return Implies(_and_opt(substitute(phi, x, t), ctx.defined(t)), Exists(x, phi))


# -- rules


def _imp(f, what):
    if not isinstance(f, Implies):
        raise SchemeError(f"{what} must be an implication, got a {type(f).__name__}")
    return f


@_scheme("mp", "rule", ALL, [], "logic", "phi, phi -> psi => psi", premises=2)
def _mp(ctx, a, b):
    b = _imp(b, "second premise")
    if not alpha_eq(a, b.left):
        raise SchemeError("first premise does not match the antecedent of the second")
    return b.right


@_scheme("syll", "rule", ALL, [], "logic", "phi -> psi, psi -> chi => phi -> chi", premises=2)
def _syll(ctx, a, b):
    a, b = _imp(a, "first premise"), _imp(b, "second premise")
    if not alpha_eq(a.right, b.left):
        raise SchemeError("middle formulas differ")
    return Implies(a.left, b.right)


@_scheme("conj-intro", "rule", ALL, [], "logic", "phi -> psi, phi -> chi => phi -> psi & chi", premises=2)
def _ci(ctx, a, b):
    a, b = _imp(a, "first premise"), _imp(b, "second premise")
    if not alpha_eq(a.left, b.left):
        raise SchemeError("antecedents differ")
    return Implies(a.left, And(a.right, b.right))


@_scheme("disj-elim", "rule", ALL, [], "logic", "phi -> chi, psi -> chi => phi | psi -> chi", premises=2)
def _de(ctx, a, b):
    a, b = _imp(a, "first premise"), _imp(b, "second premise")
    if not alpha_eq(a.right, b.right):
        raise SchemeError("consequents differ")
    return Implies(Or(a.left, b.left), a.right)


def _curry(a):
    a = _imp(a, "premise")
    if not isinstance(a.left, And):
        raise SchemeError("premise must have a conjunction as antecedent")
    return Implies(a.left.left, Implies(a.left.right, a.right))


@_scheme("curry", "rule", ALL, [], "logic", "(phi & psi) -> chi => phi -> (psi -> chi)", premises=1)
def _cur(ctx, a):
    return _curry(a)


@_scheme("curry-iff", "rule", ALL, [], "logic",
         "(phi & psi) -> chi => phi -> (psi -> chi), as half of the two-way rule", premises=1)
def _curi(ctx, a):
    return _curry(a)


@_scheme("uncurry-iff", "rule", ALL, [], "logic",
         "phi -> (psi -> chi) => (phi & psi) -> chi, the other half", premises=1)
def _uncur(ctx, a):
    a = _imp(a, "premise")
    inner = _imp(a.right, "consequent")
    return Implies(And(a.left, inner.left), inner.right)


@_scheme("forall-intro", "rule", ALL, [("x", "var")], "logic",
         "phi -> psi => phi -> forall x. psi   (x not free in phi)", premises=1)
def _fi(ctx, a):
    a = _imp(a, "premise")
    x = _check_var(ctx, ctx.get("x"))
    if x in free_vars(a.left):
        raise SchemeError(f"side condition violated: {x} is free in the antecedent")
    return Implies(a.left, Forall(x, a.right))


@_scheme("exists-elim", "rule", ALL, [("x", "var")], "logic",
         "phi -> psi => (exists x. phi) -> psi   (x not free in psi)", premises=1)
def _xe(ctx, a):
    a = _imp(a, "premise")
    x = _check_var(ctx, ctx.get("x"))
    if x in free_vars(a.right):
        raise SchemeError(f"side condition violated: {x} is free in the consequent")
    return Implies(Exists(x, a.left), a.right)


# ---------------------------------------------------------------------------
# Equality and strictness (HAP)

_FIXED_HAP = {
    "eq-app": ("equality", "forall x x'1 y y'1. x = x'1 & y = y'1 & !(x y) -> x y = x'1 y'1"),
    "eq-succ": ("equality", "forall x y. x = y & !(S x) -> S x = S y"),
    "eq-plus": ("equality", "forall x x'1 y y'1. x = x'1 & y = y'1 & !(x + y) -> x + y = x'1 + y'1"),
    "eq-times": ("equality", "forall x x'1 y y'1. x = x'1 & y = y'1 & !(x * y) -> x * y = x'1 * y'1"),
    "eq-rel": ("equality", "forall x x'1 y y'1. x = y & x = x'1 & y = y'1 -> x'1 = y'1"),
    # arithmetic
    "S-total": ("arithmetic", "forall x. !(S x)"),
    "plus-total": ("arithmetic", "forall x y. !(x + y)"),
    "times-total": ("arithmetic", "forall x y. !(x * y)"),
    "zero-ne-S": ("arithmetic", "forall x. ~(0 = S x)"),
    "plus-0": ("arithmetic", "forall x. x + 0 = x"),
    "plus-S": ("arithmetic", "forall x y. x + S y = S (x + y)"),
    "times-0": ("arithmetic", "forall x. x * 0 = 0"),
    "times-S": ("arithmetic", "forall x y. x * S y = x * y + x"),
    # combinators
    "k": ("combinators", "forall x y. k x y = x"),
    "s-def": ("combinators", "forall x y. !(s x y)"),
    "s": ("combinators", "forall x y z. s x y z ~= x z (y z)"),
    "p0-def": ("combinators", "forall x. !(p0 x)"),
    "p1-def": ("combinators", "forall x. !(p1 x)"),
    "p0": ("combinators", "forall x y. p0 (p x y) = x"),
    "p1": ("combinators", "forall x y. p1 (p x y) = y"),
    "p-surj": ("combinators", "forall x. p (p0 x) (p1 x) = x"),
    "succ": ("combinators", "forall x. succ x = S x"),
    "r0": ("combinators", "forall x y. r x y 0 = x"),
    "rS": ("combinators", "forall x y z. r x y (S z) ~= y z (r x y z)"),
}


def _fixed(src):
    return lambda ctx: _f(src)


for _id_, (_group, _src) in _FIXED_HAP.items():
    _scheme(_id_, "axiom", HAP_LANGS, [], _group, _src)(_fixed(_src))


S2 = [("s", "term"), ("t", "term")]


@_scheme("strict-const", "axiom", HAP_LANGS, [("c", "term")], "strictness", "c!   (c a constant)")
def _sc(ctx):
    c = ctx.get("c")
    if not isinstance(c, (Comb, Num, Oracle)):
        raise SchemeError(f"{c} is not a constant")
    if isinstance(c, Oracle) and ctx.lang != "hap-eps":
        raise SchemeError("choice constants need language hap-eps")
    return Defined(c)


@_scheme("strict-app", "axiom", HAP_LANGS, S2, "strictness", "!(s t) -> s! & t!")
def _sa(ctx):
    s, t = ctx.get("s"), ctx.get("t")
    return Implies(Defined(App(s, t)), And(Defined(s), Defined(t)))


@_scheme("strict-S", "axiom", HAP_LANGS, [("t", "term")], "strictness", "!(S t) -> t!")
def _ss(ctx):
    t = ctx.get("t")
    return Implies(Defined(SuccOf(t)), Defined(t))


@_scheme("strict-plus", "axiom", HAP_LANGS, S2, "strictness", "!(s + t) -> s! & t!")
def _sp(ctx):
    s, t = ctx.get("s"), ctx.get("t")
    return Implies(Defined(Plus(s, t)), And(Defined(s), Defined(t)))


@_scheme("strict-times", "axiom", HAP_LANGS, S2, "strictness", "!(s * t) -> s! & t!")
def _st(ctx):
    s, t = ctx.get("s"), ctx.get("t")
    return Implies(Defined(Times(s, t)), And(Defined(s), Defined(t)))


@_scheme("strict-eq", "axiom", HAP_LANGS, S2, "strictness", "s = t -> s! & t!")
def _se(ctx):
    s, t = ctx.get("s"), ctx.get("t")
    return Implies(Eq(s, t), And(Defined(s), Defined(t)))


def _induction(ctx):
    x = _check_var(ctx, ctx.get("x"))
    if ctx.typed and x.ty != GROUND:
        raise SchemeError("induction runs over a type-0 variable")
    phi = ctx.get("phi")
    step = Forall(x, Implies(phi, substitute(phi, x, _succ(ctx, x))))
    return Implies(And(substitute(phi, x, _zero(ctx)), step), Forall(x, phi))


_scheme("ind", "axiom", ALL, [("x", "var"), PHI], "induction",
        "phi[0/x] & forall x. (phi -> phi[S x/x]) -> forall x. phi")(_induction)


# ---------------------------------------------------------------------------
# Choice constants


def eps_parts(phi, y):
    """The choice constant for phi with witness y, and its argument term."""
    if not is_arithmetical(phi):
        raise SchemeError("choice constants exist for arithmetical formulas only")
    xs = [v for v in canonical_order(phi) if v != y]
    eps = eps_const(phi, y, tuple(xs))
    return eps, App(eps, tuple_term(xs)), xs


@_scheme("eps-def", "axiom", {"hap-eps"}, [PHI, ("y", "var")], "epsilon", "(exists y. phi) -> !(eps x)")
def _epsd(ctx):
    phi, y = ctx.get("phi"), _check_var(ctx, ctx.get("y"), "y")
    _, ex, _ = eps_parts(phi, y)
    return Implies(Exists(y, phi), Defined(ex))


@_scheme("eps-spec", "axiom", {"hap-eps"}, [PHI, ("y", "var")], "epsilon", "!(eps x) -> phi[eps x/y]")
def _epss(ctx):
    phi, y = ctx.get("phi"), _check_var(ctx, ctx.get("y"), "y")
    _, ex, _ = eps_parts(phi, y)
    return Implies(Defined(ex), substitute(phi, y, ex))


# ---------------------------------------------------------------------------
# Finite-type arithmetic

SIG = ("sigma", "type")
TAU = ("tau", "type")
RHO = ("rho", "type")


def _tv(name, ty, index=0):
    return TVar(name, ty, index)


# equality is shared; the typed languages state it at every type sigma


def _eqvars(ctx, names):
    return [ctx.var(n, ctx.ty("sigma")) for n in names]


@_scheme("eq-refl", "axiom", ALL, [SIG], "equality", "forall x. x = x   (typed: at type sigma)")
def _oref(ctx):
    (x,) = _eqvars(ctx, "x")
    return Forall(x, Eq(x, x))


@_scheme("eq-sym", "axiom", ALL, [SIG], "equality", "forall x y. x = y -> y = x")
def _osym(ctx):
    x, y = _eqvars(ctx, "xy")
    return forall([x, y], Implies(Eq(x, y), Eq(y, x)))


@_scheme("eq-trans", "axiom", ALL, [SIG], "equality", "forall x y z. x = y & y = z -> x = z")
def _otr(ctx):
    x, y, z = _eqvars(ctx, "xyz")
    return forall([x, y, z], Implies(And(Eq(x, y), Eq(y, z)), Eq(x, z)))


@_scheme("cong-fun", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-congruence",
         "forall f g:sigma->tau, x:sigma. f = g -> f x = g x")
def _cf(ctx):
    st = Arrow(ctx.ty("sigma"), ctx.ty("tau"))
    f, g, x = _tv("f", st), _tv("g", st), _tv("x", ctx.ty("sigma"))
    return forall([f, g, x], Implies(Eq(f, g), Eq(TApp(f, x), TApp(g, x))))


@_scheme("cong-arg", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-congruence",
         "forall f:sigma->tau, x y:sigma. x = y -> f x = f y")
def _ca(ctx):
    st = Arrow(ctx.ty("sigma"), ctx.ty("tau"))
    f, x, y = _tv("f", st), _tv("x", ctx.ty("sigma")), _tv("y", ctx.ty("sigma"))
    return forall([f, x, y], Implies(Eq(x, y), Eq(TApp(f, x), TApp(f, y))))


@_scheme("S-ne-0", "axiom", OMEGA_LANGS, [], "omega-successor", "forall x:0. ~(Succ x = 0)")
def _sn0(ctx):
    x = _tv("x", GROUND)
    return Forall(x, Implies(Eq(TApp(TSUCC, x), TZERO), Bot()))


@_scheme("S-inj", "axiom", ALL, [], "successor", "forall x y. S x = S y -> x = y")
def _sinj(ctx):
    x, y = ctx.var("x"), ctx.var("y")
    return forall([x, y], Implies(Eq(_succ(ctx, x), _succ(ctx, y)), Eq(x, y)))


@_scheme("K", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-combinators", "K x y = x")
def _ok(ctx):
    s, t = ctx.ty("sigma"), ctx.ty("tau")
    x, y = _tv("x", s), _tv("y", t)
    return forall([x, y], Eq(tapp(K(s, t), x, y), x))


@_scheme("S", "axiom", OMEGA_LANGS, [RHO, SIG, TAU], "omega-combinators", "S x y z = x z (y z)")
def _os(ctx):
    r, s, t = ctx.ty("rho"), ctx.ty("sigma"), ctx.ty("tau")
    x, y, z = _tv("x", Arrow(r, Arrow(s, t))), _tv("y", Arrow(r, s)), _tv("z", r)
    return forall([x, y, z], Eq(tapp(S(r, s, t), x, y, z), TApp(TApp(x, z), TApp(y, z))))


@_scheme("P0", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-combinators", "P0 (P x y) = x")
def _op0(ctx):
    s, t = ctx.ty("sigma"), ctx.ty("tau")
    x, y = _tv("x", s), _tv("y", t)
    return forall([x, y], Eq(TApp(P0(s, t), tapp(P(s, t), x, y)), x))


@_scheme("P1", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-combinators", "P1 (P x y) = y")
def _op1(ctx):
    s, t = ctx.ty("sigma"), ctx.ty("tau")
    x, y = _tv("x", s), _tv("y", t)
    return forall([x, y], Eq(TApp(P1(s, t), tapp(P(s, t), x, y)), y))


@_scheme("P-surj", "axiom", OMEGA_LANGS, [SIG, TAU], "omega-combinators", "P (P0 x) (P1 x) = x")
def _ops(ctx):
    s, t = ctx.ty("sigma"), ctx.ty("tau")
    x = _tv("x", Prod(s, t))
    return Forall(x, Eq(tapp(P(s, t), TApp(P0(s, t), x), TApp(P1(s, t), x)), x))


def _rec_vars(ctx):
    s = ctx.ty("sigma")
    return s, _tv("x", s), _tv("y", Arrow(GROUND, Arrow(s, s))), _tv("n", GROUND)


@_scheme("R0", "axiom", OMEGA_LANGS, [SIG], "omega-combinators", "R x y 0 = x")
def _or0(ctx):
    s, x, y, _ = _rec_vars(ctx)
    return forall([x, y], Eq(tapp(R(s), x, y, TZERO), x))


@_scheme("RS", "axiom", OMEGA_LANGS, [SIG], "omega-combinators", "R x y (Succ n) = y n (R x y n)")
def _ors(ctx):
    s, x, y, n = _rec_vars(ctx)
    return forall([x, y, n], Eq(tapp(R(s), x, y, TApp(TSUCC, n)), tapp(y, n, tapp(R(s), x, y, n))))


def _e_vars(ctx):
    s = ctx.ty("sigma")
    x, y = _tv("x", s), _tv("y", s)
    return s, x, y, tapp(E(s), x, y)


@_scheme("E-bound", "axiom", {"iha"}, [SIG], "omega-eq-test", "E x y = 0 | E x y = Succ 0")
def _eb(ctx):
    _, x, y, exy = _e_vars(ctx)
    return forall([x, y], Or(Eq(exy, TZERO), Eq(exy, TApp(TSUCC, TZERO))))


@_scheme("E-eq", "axiom", {"iha"}, [SIG], "omega-eq-test", "E x y = 0 -> x = y")
def _ee(ctx):
    _, x, y, exy = _e_vars(ctx)
    return forall([x, y], Implies(Eq(exy, TZERO), Eq(x, y)))


@_scheme("E-eq-rev", "axiom", {"iha"}, [SIG], "omega-eq-test", "x = y -> E x y = 0")
def _eer(ctx):
    _, x, y, exy = _e_vars(ctx)
    return forall([x, y], Implies(Eq(x, y), Eq(exy, TZERO)))


@_scheme("ext", "axiom", {"eha"}, [SIG, TAU], "omega-extensionality",
         "forall f g:sigma->tau. (forall x. f x = g x) -> f = g")
def _ext(ctx):
    st = Arrow(ctx.ty("sigma"), ctx.ty("tau"))
    f, g, x = _tv("f", st), _tv("g", st), _tv("x", ctx.ty("sigma"))
    return forall([f, g], Implies(Forall(x, Eq(TApp(f, x), TApp(g, x))), Eq(f, g)))


def _ac(ctx, qf: bool):
    x, y, phi = ctx.get("x"), ctx.get("y"), ctx.get("phi")
    _check_var(ctx, x)
    _check_var(ctx, y, "y")
    if qf and not is_quantifier_free(phi):
        raise SchemeError("QF-AC needs a quantifier-free formula")
    from ..translations import ac_instance

    return ac_instance(x.ty, y.ty, phi, x, y)


_AC_METAS = [("x", "var"), ("y", "var"), PHI]
_scheme("AC", "axiom", OMEGA_LANGS, _AC_METAS, "choice",
        "forall x. exists y. phi -> exists f. forall x. phi[f x/y]")(lambda ctx: _ac(ctx, False))
_scheme("QF-AC", "axiom", OMEGA_LANGS, _AC_METAS, "choice",
        "AC restricted to quantifier-free phi")(lambda ctx: _ac(ctx, True))


def instantiate(id: str, lang: str, bindings: dict):
    """The formula an axiom node asserts."""
    sc = get_scheme(id, lang)
    if sc.kind != "axiom":
        raise SchemeError(f"{id} is a rule, not an axiom")
    unknown = set(bindings) - {n for n, _ in sc.metas}
    if unknown:
        raise SchemeError(f"unknown metavariables {sorted(unknown)} for {id}")
    return sc.build(Ctx(lang, dict(bindings)))


def apply_rule(id: str, lang: str, bindings: dict, premises: list):
    sc = get_scheme(id, lang)
    if sc.kind != "rule":
        raise SchemeError(f"{id} is an axiom, not a rule")
    if len(premises) != sc.premises:
        raise SchemeError(f"{id} takes {sc.premises} premises, got {len(premises)}")
    return sc.build(Ctx(lang, dict(bindings)), *premises)


def catalogue(lang: Optional[str] = None) -> list:
    return [s for s in SCHEMES.values() if lang is None or lang in s.langs]
