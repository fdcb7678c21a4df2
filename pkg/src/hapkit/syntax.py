"""Abstract syntax for the three object languages.

* untyped applicative terms (arithmetic plus combinators, with oracle constants),
* typed terms over the finite types,
* one formula carrier shared by all languages.

Everything here is an immutable dataclass, so terms and formulas hash and
compare structurally.  Binding is nominal: a variable is a ``(name, index)``
pair and capture-avoiding substitution renames a binder by bumping its index
to the smallest one not in use.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Iterable, Iterator, Optional, Union


class SyntaxError_(ValueError):
    """Raised for ill-formed syntax objects (kept distinct from builtins.SyntaxError)."""


class TypeError_(SyntaxError_):
    """An ill-typed HAω term; ``subterm`` is the offending node."""

    def __init__(self, message, subterm=None):
        super().__init__(message)
        self.subterm = subterm


# ---------------------------------------------------------------------------
# Finite types


@dataclass(frozen=True)
class Ground:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Arrow:
    dom: "FiniteType"
    cod: "FiniteType"

    def __str__(self):
        left = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{left}->{self.cod}"


@dataclass(frozen=True)
class Prod:
    left: "FiniteType"
    right: "FiniteType"

    def __str__(self):
        def part(t):
            return str(t) if isinstance(t, Ground) else f"({t})"

        return f"{part(self.left)}*{part(self.right)}"


FiniteType = Union[Ground, Arrow, Prod]
GROUND = Ground()


def arrows(*types: FiniteType) -> FiniteType:
    """Right-nested arrow: ``arrows(a, b, c) == a -> (b -> c)``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


# ---------------------------------------------------------------------------
# Untyped (HAP) terms

COMBINATORS = ("k", "s", "p", "p0", "p1", "succ", "r")


@dataclass(frozen=True)
class Var:
    name: str
    index: int = 0

    def __str__(self):
        return self.name if self.index == 0 else f"{self.name}'{self.index}"


@dataclass(frozen=True)
class Comb:
    tag: str

    def __post_init__(self):
        if self.tag not in COMBINATORS:
            raise SyntaxError_(f"unknown combinator {self.tag!r}")


@dataclass(frozen=True)
class EpsSpec:
    """Which choice constant an oracle stands for: ``eps`` for ``formula``
    with witness variable ``witness`` and parameters ``params``."""

    formula: "Formula"
    witness: Var
    params: tuple = ()


@dataclass(frozen=True)
class Oracle:
    id: str
    eps: Optional[EpsSpec] = field(default=None, compare=False)  # the id already prints the spec


@dataclass(frozen=True)
class Num:
    """Numeral literal; ``Num(0)`` is the constant 0."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise SyntaxError_("numerals are natural numbers")


@dataclass(frozen=True)
class SuccOf:
    arg: "UntypedTerm"


@dataclass(frozen=True)
class Plus:
    left: "UntypedTerm"
    right: "UntypedTerm"


@dataclass(frozen=True)
class Times:
    left: "UntypedTerm"
    right: "UntypedTerm"


@dataclass(frozen=True)
class App:
    fun: "UntypedTerm"
    arg: "UntypedTerm"


@dataclass(frozen=True)
class Lam:
    """Abstraction sugar; removed by :mod:`hapkit.abstraction`."""

    var: Var
    body: "UntypedTerm"


UntypedTerm = Union[Var, Comb, Oracle, Num, SuccOf, Plus, Times, App, Lam]
ZERO = Num(0)


def app(head, *args):
    """Left-associated application ``head a1 a2 ...``."""
    for a in args:
        head = App(head, a)
    return head


def lam(vars_, body):
    for v in reversed(list(vars_)):
        body = Lam(v, body)
    return body


# ---------------------------------------------------------------------------
# Typed (HAω) terms

TYPED_CONSTANTS = {
    # tag -> number of type parameters
    "K": 2,
    "S": 3,
    "P": 2,
    "P0": 2,
    "P1": 2,
    "Zero": 0,
    "Succ": 0,
    "R": 1,
    "E": 1,
    "pair": 0,
}


@dataclass(frozen=True)
class TVar:
    name: str
    ty: FiniteType
    index: int = 0

    def __str__(self):
        return self.name if self.index == 0 else f"{self.name}'{self.index}"


@dataclass(frozen=True)
class TConst:
    tag: str
    params: tuple = ()

    def __post_init__(self):
        arity = TYPED_CONSTANTS.get(self.tag)
        if arity is None:
            raise SyntaxError_(f"unknown typed constant {self.tag!r}")
        if len(self.params) != arity:
            raise SyntaxError_(f"{self.tag} takes {arity} type parameters")


@dataclass(frozen=True)
class TApp:
    fun: "TypedTerm"
    arg: "TypedTerm"


@dataclass(frozen=True)
class TLam:
    var: TVar
    body: "TypedTerm"


TypedTerm = Union[TVar, TConst, TApp, TLam]


def K(s, t):
    return TConst("K", (s, t))


def S(r, s, t):
    return TConst("S", (r, s, t))


def P(r, s):
    return TConst("P", (r, s))


def P0(r, s):
    return TConst("P0", (r, s))


def P1(r, s):
    return TConst("P1", (r, s))


def R(s):
    return TConst("R", (s,))


def E(s):
    return TConst("E", (s,))


TZERO = TConst("Zero")
TSUCC = TConst("Succ")
TPAIR = TConst("pair")


def tapp(head, *args):
    for a in args:
        head = TApp(head, a)
    return head


def tnum(n: int) -> TypedTerm:
    t = TZERO
    for _ in range(n):
        t = TApp(TSUCC, t)
    return t


def const_type(c: TConst) -> FiniteType:
    p = c.params
    match c.tag:
        case "K":
            s, t = p
            return arrows(s, t, s)
        case "S":
            r, s, t = p
            return arrows(arrows(r, s, t), arrows(r, s), arrows(r, t))
        case "P":
            r, s = p
            return arrows(r, s, Prod(r, s))
        case "P0":
            return Arrow(Prod(*p), p[0])
        case "P1":
            return Arrow(Prod(*p), p[1])
        case "Zero":
            return GROUND
        case "Succ":
            return Arrow(GROUND, GROUND)
        case "R":
            (s,) = p
            return arrows(s, arrows(GROUND, s, s), GROUND, s)
        case "E":
            (s,) = p
            return arrows(s, s, GROUND)
        case "pair":
            return arrows(GROUND, GROUND, GROUND)
    raise SyntaxError_(c.tag)


def type_of(t: TypedTerm) -> FiniteType:
    """The unique type of a typed term; raises :class:`TypeError_` naming the
    offending subterm when an application does not fit."""
    match t:
        case TVar(ty=ty):
            return ty
        case TConst():
            return const_type(t)
        case TLam(var, body):
            return Arrow(var.ty, type_of(body))
        case TApp(fun, arg):
            ft = type_of(fun)
            at = type_of(arg)
            if not isinstance(ft, Arrow):
                raise TypeError_(f"applying a term of non-function type {ft}", t)
            if ft.dom != at:
                raise TypeError_(f"argument of type {at} where {ft.dom} expected", t)
            return ft.cod
    raise TypeError_(f"not a typed term: {t!r}", t)


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Eq:
    lhs: object
    rhs: object

    @property
    def lang(self) -> str:
        return "omega" if is_typed(self.lhs) else "hap"

    @property
    def ty(self) -> Optional[FiniteType]:
        return type_of(self.lhs) if is_typed(self.lhs) else None


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: object  # Var or TVar
    body: "Formula"
    dom: Optional[str] = None  # ground-model domain label, HAP only


@dataclass(frozen=True)
class Exists:
    var: object
    body: "Formula"
    dom: Optional[str] = None


@dataclass(frozen=True)
class Defined:
    """``t!``, i.e. t denotes; sugar for ``t = t``."""

    term: object


@dataclass(frozen=True)
class KleeneEq:
    """``s ~= t``: equally defined, and equal when defined."""

    lhs: object
    rhs: object


@dataclass(frozen=True)
class FRel:
    """The relation symbol F(x, y) of the forcing extension."""

    x: object
    y: object


@dataclass(frozen=True)
class CondSpec:
    """The parameter formula psi(x, y) of a forcing extension."""

    formula: "Formula"
    x: Var
    y: Var


@dataclass(frozen=True)
class IsCond:
    term: object
    psi: CondSpec


@dataclass(frozen=True)
class Leq:
    """``q <= p``: p is an initial segment of q."""

    q: object
    p: object


@dataclass(frozen=True)
class Member:
    """``(x, y) in r``."""

    x: object
    y: object
    r: object


Formula = Union[Bot, Eq, And, Or, Implies, Not, Forall, Exists, Defined, KleeneEq, FRel, IsCond, Leq, Member]

ATOMS = (Bot, Eq, Defined, KleeneEq, FRel, IsCond, Leq, Member)
TERM_TYPES = (Var, Comb, Oracle, Num, SuccOf, Plus, Times, App, Lam)
TYPED_TYPES = (TVar, TConst, TApp, TLam)
VAR_TYPES = (Var, TVar)


def is_typed(t) -> bool:
    return isinstance(t, TYPED_TYPES)


def is_term(x) -> bool:
    return isinstance(x, TERM_TYPES) or isinstance(x, TYPED_TYPES)


def conj(*parts):
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def forall(vars_, body, dom=None):
    for v in reversed(list(vars_)):
        body = Forall(v, body, dom)
    return body


def exists(vars_, body, dom=None):
    for v in reversed(list(vars_)):
        body = Exists(v, body, dom)
    return body


def neq(s, t):
    return Implies(Eq(s, t), Bot())


# ---------------------------------------------------------------------------
# Traversal


def _children(x) -> Iterator:
    for f in fields(x):
        v = getattr(x, f.name)
        if is_term(v) or isinstance(v, (Bot, Eq, And, Or, Implies, Not, Forall, Exists,
                                        Defined, KleeneEq, FRel, IsCond, Leq, Member)):
            yield v


def binder(x):
    """The variable bound at node ``x``, if any."""
    if isinstance(x, (Lam, TLam, Forall, Exists)):
        return x.var
    return None


def free_vars(x) -> frozenset:
    """Variables with a free occurrence in a term or formula.

    Oracle constants are closed: their defining formula is not scanned.
    """
    match x:
        case Var() | TVar():
            return frozenset((x,))
        case Comb() | Oracle() | Num() | TConst() | Bot():
            return frozenset()
        case IsCond(term, _):
            return free_vars(term)
        case Lam(v, body) | TLam(v, body) | Forall(v, body) | Exists(v, body):
            return free_vars(body) - {v}
    out = frozenset()
    for c in _children(x):
        out |= free_vars(c)
    return out


def all_vars(x) -> frozenset:
    """Free and bound variables, used to choose fresh names."""
    match x:
        case Var() | TVar():
            return frozenset((x,))
        case Comb() | Oracle() | Num() | TConst() | Bot():
            return frozenset()
        case IsCond(term, _):
            return all_vars(term)
    out = frozenset()
    v = binder(x)
    if v is not None:
        out |= {v}
    for c in _children(x):
        out |= all_vars(c)
    return out


def fresh(v, avoid: Iterable) -> object:
    """``v`` with the smallest index such that no variable in ``avoid`` has the
    same name and index."""
    taken = {(a.name, a.index) for a in avoid}
    i = 0
    while (v.name, i) in taken:
        i += 1
    return replace(v, index=i)


def fresh_named(name: str, avoid: Iterable, ty: Optional[FiniteType] = None):
    v = Var(name) if ty is None else TVar(name, ty)
    return fresh(v, avoid)


def _rebuild(x, **changes):
    return replace(x, **changes)


def map_children(x, fn):
    """Apply ``fn`` to every direct syntactic child (terms and formulas)."""
    changes = {}
    for f in fields(x):
        v = getattr(x, f.name)
        if is_term(v) or isinstance(v, ATOMS + (And, Or, Implies, Not, Forall, Exists)):
            if isinstance(v, VAR_TYPES) and binder(x) is v:
                continue
            changes[f.name] = fn(v)
    return replace(x, **changes) if changes else x


def substitute(target, x, s):
    """Capture-avoiding ``target[s/x]``."""
    if is_typed(s) and isinstance(x, TVar):
        sty = type_of(s)
        if sty != x.ty:
            raise TypeError_(f"substituting a term of type {sty} for {x}:{x.ty}", s)
    fv_s = free_vars(s)
    return _subst(target, x, s, fv_s)


def _subst(t, x, s, fv_s):
    match t:
        case Var() | TVar():
            return s if t == x else t
        case Comb() | Oracle() | Num() | TConst() | Bot():
            return t
        case IsCond(term, psi):
            return IsCond(_subst(term, x, s, fv_s), psi)
    v = binder(t)
    if v is not None:
        if v == x or x not in free_vars(t):
            return t
        body = t.body
        if v in fv_s:
            nv = fresh(v, fv_s | all_vars(body) | {x})
            body = _subst(body, v, nv, frozenset((nv,)))
            v = nv
        return replace(t, var=v, body=_subst(body, x, s, fv_s))
    return map_children(t, lambda c: _subst(c, x, s, fv_s))


def substitute_many(target, mapping: dict):
    """Simultaneous substitution via fresh intermediates."""
    if not mapping:
        return target
    avoid = set(all_vars(target))
    for k, v in mapping.items():
        avoid |= {k} | free_vars(v)
    temps = {}
    for k in mapping:
        tmp = fresh(replace(k, name="_" + k.name), avoid)
        avoid.add(tmp)
        temps[k] = tmp
        target = substitute(target, k, tmp)
    for k, v in mapping.items():
        target = substitute(target, temps[k], v)
    return target


# ---------------------------------------------------------------------------
# Alpha-equivalence


def _canon(x, env: dict, depth: int):
    match x:
        case Var() | TVar():
            if x in env:
                return replace(x, name="", index=env[x])
            return x
        case Comb() | Oracle() | Num() | TConst() | Bot():
            return x
        case IsCond(term, psi):
            return IsCond(_canon(term, env, depth), psi)
    v = binder(x)
    if v is not None:
        inner = dict(env)
        inner[v] = depth
        return replace(x, var=replace(v, name="", index=depth), body=_canon(x.body, inner, depth + 1))
    return map_children(x, lambda c: _canon(c, env, depth))


def canonical(x):
    """Bound variables renamed by binding depth; equal results iff alpha-equivalent."""
    return _canon(x, {}, 0)


def alpha_eq(a, b) -> bool:
    return canonical(a) == canonical(b)


# ---------------------------------------------------------------------------
# Desugaring and classification


def _zero_like(lang_typed: bool):
    return TZERO if lang_typed else ZERO


def _mentions_typed(x) -> bool:
    if is_typed(x):
        return True
    if isinstance(x, (Forall, Exists)) and isinstance(x.var, TVar):
        return True
    return any(_mentions_typed(c) for c in _children(x))


def or_as_exists(left, right, typed: bool = False):
    """``left \\/ right`` as ``exists n. (n = 0 -> left) /\\ (n != 0 -> right)``."""
    avoid = free_vars(left) | free_vars(right)
    n = fresh_named("n", avoid, GROUND if typed else None)
    z = _zero_like(typed)
    return Exists(n, And(Implies(Eq(n, z), left), Implies(neq(n, z), right)))


def desugar(phi, or_elim: bool = True, typed: Optional[bool] = None):
    """Expand ``t!``, ``s ~= t`` and negation; with ``or_elim`` also replace every
    disjunction by its existential encoding.  Idempotent."""
    if typed is None:
        typed = _mentions_typed(phi)
    match phi:
        case Defined(t):
            return Eq(t, t)
        case KleeneEq(a, b):
            return desugar(Implies(Or(Defined(a), Defined(b)), Eq(a, b)), or_elim, typed)
        case Not(body):
            return Implies(desugar(body, or_elim, typed), Bot())
        case Or(left, right):
            left, right = desugar(left, or_elim, typed), desugar(right, or_elim, typed)
            return or_as_exists(left, right, typed) if or_elim else Or(left, right)
        case Bot() | Eq() | FRel() | IsCond() | Leq() | Member():
            return phi
        case And() | Implies():
            return replace(phi, left=desugar(phi.left, or_elim, typed), right=desugar(phi.right, or_elim, typed))
        case Forall() | Exists():
            return replace(phi, body=desugar(phi.body, or_elim, typed))
    raise SyntaxError_(f"not a formula: {phi!r}")


def _arith_term(t) -> bool:
    match t:
        case Var() | Num():
            return True
        case TVar(ty=ty):
            return ty == GROUND
        case TConst(tag="Zero"):
            return True
        case TApp(TConst(tag="Succ"), arg):
            return _arith_term(arg)
        case SuccOf(a):
            return _arith_term(a)
        case Plus(a, b) | Times(a, b):
            return _arith_term(a) and _arith_term(b)
    return False


def is_arithmetical(phi) -> bool:
    """Built from 0, S, +, x, type-0 equality, connectives and type-0 quantifiers."""
    match phi:
        case Bot():
            return True
        case Eq(a, b) | KleeneEq(a, b):
            return _arith_term(a) and _arith_term(b)
        case Defined(t):
            return _arith_term(t)
        case Not(b):
            return is_arithmetical(b)
        case And(a, b) | Or(a, b) | Implies(a, b):
            return is_arithmetical(a) and is_arithmetical(b)
        case Forall(v, b) | Exists(v, b):
            return (isinstance(v, Var) or v.ty == GROUND) and is_arithmetical(b)
    return False


def is_quantifier_free(phi) -> bool:
    """No quantifiers and no equalities of higher type."""
    match phi:
        case Bot():
            return True
        case Eq(a, b) | KleeneEq(a, b):
            return not is_typed(a) or type_of(a) == GROUND
        case Defined(t):
            return not is_typed(t) or type_of(t) == GROUND
        case Not(b):
            return is_quantifier_free(b)
        case And(a, b) | Or(a, b) | Implies(a, b):
            return is_quantifier_free(a) and is_quantifier_free(b)
    return False


def classify(phi) -> str:
    """One of ``quantifier_free``, ``arithmetical``, ``other`` (first match wins)."""
    if is_quantifier_free(phi):
        return "quantifier_free"
    if is_arithmetical(phi):
        return "arithmetical"
    return "other"


def check_formula(phi, lang: str) -> None:
    """Per-language well-formedness: typed terms only in ``omega`` and vice versa,
    equality sides of a common type, higher-type equality only in ``omega``."""
    typed = lang == "omega"

    def check_term(t):
        if typed != is_typed(t):
            raise SyntaxError_(f"term {t!r} does not belong to language {lang}")
        if typed:
            type_of(t)

    def go(f):
        match f:
            case Eq(a, b) | KleeneEq(a, b):
                check_term(a)
                check_term(b)
                if typed and type_of(a) != type_of(b):
                    raise TypeError_(f"equation between types {type_of(a)} and {type_of(b)}", f)
            case Defined(t):
                check_term(t)
            case FRel() | IsCond() | Leq() | Member():
                if typed:
                    raise SyntaxError_("forcing atoms belong to HAP")
            case Forall(v, b) | Exists(v, b):
                if typed != isinstance(v, TVar):
                    raise SyntaxError_(f"quantified variable {v} does not belong to {lang}")
                go(b)
            case Bot():
                pass
            case Not(b):
                go(b)
            case And(a, b) | Or(a, b) | Implies(a, b):
                go(a)
                go(b)
            case _:
                raise SyntaxError_(f"not a formula: {f!r}")

    go(phi)


def subterms(t) -> Iterator:
    yield t
    for c in _children(t):
        yield from subterms(c)


def oracles_in(x) -> frozenset:
    """All oracle constants occurring in a term or formula (including inside the
    defining formulas of choice constants)."""
    out = set()
    for node in subterms(x):
        if isinstance(node, Oracle):
            out.add(node)
            if node.eps is not None:
                out |= oracles_in(node.eps.formula)
        elif isinstance(node, IsCond):
            out |= oracles_in(node.psi.formula)
    return frozenset(out)
